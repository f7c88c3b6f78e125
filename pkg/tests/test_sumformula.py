import pytest

from gwverify.errors import ContactMismatch, ResourceBound
from gwverify.sumformula import (
    GUARANTEED,
    GUARANTEED_PRIMARY_ONLY,
    NOT_GUARANTEED,
    BipartiteGraph,
    GraphConstraints,
    GraphVertex,
    GwSetting,
    assemble_example,
    enumerate_graphs,
    hollow_sufficient,
    p4_line_candidates,
    stability_sufficient,
    thm1_verdict,
    vanishing_filter,
    vir_dim,
)


def setting(n, g, k=0, AdotV=0, c1A=0, A_zero=False, kappa_trivial=True):
    return GwSetting(
        n=n, g=g, k=k, AdotV=AdotV, c1A=c1A, A_is_zero=A_zero, kappa_trivial=kappa_trivial
    )


# -- dimensions -----------------------------------------------------------------

def test_vir_dim_absolute():
    # the projective-line genus-2 setting: dimension 12 over the reals
    s = setting(n=1, g=2, k=2, c1A=2)
    assert vir_dim(s) == 12
    # genus-1 degree-0 with one point
    assert vir_dim(setting(n=7, g=1, k=1)) == 2


def test_vir_dim_relative_all_ones():
    s = setting(n=4, g=3, k=1, AdotV=6, c1A=5)
    assert vir_dim(s, s=[1] * 6) == vir_dim(s)
    with pytest.raises(ContactMismatch):
        vir_dim(s, s=[2, 1])


def test_vir_dim_all_ones_property():
    for n in range(1, 6):
        for g in range(4):
            for AdotV in range(5):
                s = setting(n=n, g=g, k=2, AdotV=AdotV, c1A=3)
                assert vir_dim(s, s=[1] * AdotV if AdotV else []) == vir_dim(s)


# -- hollowness and stability -----------------------------------------------------

def test_hollow_sufficient():
    # degree-6 hypersurface: 6d > 5d always
    assert hollow_sufficient(4, 3, 6, p4_line_candidates(6, 3))
    # degree-5: 5d > 5d fails
    assert not hollow_sufficient(4, 3, 5, p4_line_candidates(5, 3))
    assert hollow_sufficient(4, 3, 6, [])


def test_stability_sufficient():
    # need delta*d >= 5d + 4 + 2g: delta=15, g=3 works for d=1
    cands = [(5 * d, 15 * d) for d in range(1, 6)]
    assert stability_sufficient(4, 3, cands)
    cands5 = [(5 * d, 5 * d) for d in range(1, 6)]
    assert not stability_sufficient(4, 3, cands5)
    assert stability_sufficient(4, 3, [])


# -- verdicts ----------------------------------------------------------------------

def test_thm1_verdict_spec_examples():
    assert thm1_verdict(setting(n=5, g=3)).status == GUARANTEED
    v = thm1_verdict(setting(n=4, g=3, kappa_trivial=True))
    assert v.status == NOT_GUARANTEED and v.counter_example == 3
    v = thm1_verdict(setting(n=1, g=2, kappa_trivial=False))
    assert v.status == NOT_GUARANTEED and v.counter_example == 2
    v = thm1_verdict(setting(n=3, g=1, A_zero=True))
    assert v.status == NOT_GUARANTEED and v.counter_example == 1


def test_thm1_verdict_grid():
    for n in range(1, 7):
        for g in range(5):
            for kappa in (True, False):
                for a_zero in (True, False):
                    s = setting(n=n, g=g, A_zero=a_zero, kappa_trivial=kappa)
                    v = thm1_verdict(s)
                    in_18 = (not (g == 1 and a_zero)) and (n - 5) * g * (g - 1) >= 0
                    assert (v.status == GUARANTEED) == in_18
                    if v.status == GUARANTEED_PRIMARY_ONLY:
                        assert kappa and not a_zero and (g == 2 or n != 4)
                    if v.status == NOT_GUARANTEED:
                        assert v.counter_example in (1, 2, 3)
                        if v.counter_example == 1:
                            assert a_zero
                        elif v.counter_example == 2:
                            assert not kappa and 1 <= n <= 4 and g >= 2
                        else:
                            assert kappa and n == 4 and g >= 3


def test_thm1_monotone_in_n():
    # raising n from 4 to 5+ never demotes a trivial-kappa nonzero-A setting
    for g in range(5):
        v4 = thm1_verdict(setting(n=4, g=g))
        for n in (5, 6):
            vn = thm1_verdict(setting(n=n, g=g))
            if v4.status == GUARANTEED:
                assert vn.status == GUARANTEED


# -- graph enumeration ---------------------------------------------------------------

def test_example2_graph_counts():
    for delta in range(1, 8):
        cons = GraphConstraints(genus_cap_v=2, v_components=delta)
        graphs = enumerate_graphs(2, delta, 2, cons)
        # genus budget 2 over the X-vertex and the delta V-vertices:
        # all on X; one V-vertex with 1 or 2; two V-vertices with 1 each
        expected_total = 1 + 2 * delta + delta * (delta - 1) // 2
        assert len(graphs) == expected_total
        surviving = [g for g in graphs if vanishing_filter(g, 1, False, 2)]
        assert len(surviving) == 1 + delta


def test_example3_graph_counts():
    for delta in range(1, 6):
        cons = GraphConstraints(genus_cap_v=3, v_components=1)
        graphs = enumerate_graphs(3, delta, 1, cons)
        surviving = [g for g in graphs if vanishing_filter(g, 4, True, 3)]
        assert len(surviving) == 2
        # the two survivors: all-basic with X-genus 3, and one genus-3 vertex
        genera = sorted(max((v.genus for v in g.v_vertices), default=0) for g in surviving)
        assert genera == [0, 3]


def test_genus_zero_graphs_are_trees():
    graphs = enumerate_graphs(0, 3, 2, GraphConstraints(genus_cap_v=0, v_components=1))
    for g in graphs:
        assert g.graph_genus == 0 or not vanishing_filter(g, 4, True, 0)
        assert all(v.genus == 0 for v in g.v_vertices)


def test_degree_zero_one_vertex_graphs():
    graphs = enumerate_graphs(1, 0, 1, GraphConstraints())
    assert len(graphs) == 2
    sides = sorted(("V" if g.v_vertices else "X") for g in graphs)
    assert sides == ["V", "X"]


def test_resource_bound():
    with pytest.raises(ResourceBound):
        enumerate_graphs(4, 1, 0, GraphConstraints())
    with pytest.raises(ResourceBound):
        enumerate_graphs(2, 13, 0, GraphConstraints())


def test_filter_rejects_wrong_shapes():
    # a genus-0 vertex with a label-2 edge never contributes
    g = BipartiteGraph(
        GraphVertex("X", 3, 1, 1),
        (GraphVertex("V", 0, 2, 0),),
        ((2,),),
    )
    g.validate(3, 2, 1)
    assert not vanishing_filter(g, 4, True, 3)
    # a top-genus vertex with two edges is rejected
    g2 = BipartiteGraph(
        GraphVertex("X", 1, 1, 1),
        (GraphVertex("V", 3, 2, 0),),
        ((1, 1),),
    )
    # genus budget: 1 + 3 + g_graph(= 2 - 2 + 1 = 1) ... validate against g = 5 is
    # out of enumeration bounds, but the filter is a pure predicate
    assert not vanishing_filter(g2, 4, True, 3)
    # genus-1 vertex under the lemma hypotheses is rejected
    g3 = BipartiteGraph(
        GraphVertex("X", 2, 1, 2),
        (GraphVertex("V", 1, 1, 0),),
        ((1,),),
    )
    assert not vanishing_filter(g3, 1, False, 2)


# -- assemblies ------------------------------------------------------------------------

def test_example1_report():
    for n in (2, 3, 4):
        for delta in range(1, 6):
            report = assemble_example(1, delta, n=n)
            assert report.status == "PASS", report.to_text()


def test_example1_symbolic_report():
    # the consistency identities also hold with a symbolic degree
    for n in (2, 3, 4):
        report = assemble_example(1, "symbolic", n=n)
        assert report.status == "PASS", report.to_text()


def test_example1_empty_divisor_degenerates():
    # degree 0 models the empty divisor: relative equals absolute
    report = assemble_example(1, 0, n=4)
    assert report.status == "PASS"
    values = {i.label: i.value for i in report.items}
    assert values["absolute j-invariant chi(X)/2"] == values[
        "relative j-invariant (chi(X)-chi(V))/2"
    ]


def test_example2_symbolic_report():
    report = assemble_example(2, "symbolic")
    assert report.status == "PASS", report.to_text()


def test_example2_numeric_reports():
    for delta in range(1, 8):
        report = assemble_example(2, delta)
        assert report.status == "PASS", report.to_text()


def test_example3_symbolic_report():
    report = assemble_example(3, "symbolic")
    assert report.status == "PASS", report.to_text()


def test_example3_numeric_reports():
    for delta in (1, 2, 5):
        report = assemble_example(3, delta)
        assert report.status == "PASS", report.to_text()
