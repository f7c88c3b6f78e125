"""Degeneration-graph combinatorics and the end-to-end identity assemblies.

Covers the decorated bipartite graphs of a symplectic-sum decomposition,
the vanishing filter that reduces them to the contributing ones, expected
dimensions, the hollowness/stability sufficient criteria, the guarantee
verdict with counter-example pointers, and the three worked examples
assembled from the other modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .chern import (
    DeltaPoly,
    degree_correction_genus3,
    euler_char,
    genus1_consistency_alpha,
    genus1_consistency_j,
    gw_genus1_deg0,
    hypersurface,
    projective_space,
)
from .errors import ContactMismatch, ResourceBound
from .hodge import HodgeMonomial, hodge_intersect
from .localization import builtin_problem, problem_total
from .reports import VerificationReport
from .scalars import rat_to_str

MAX_GRAPH_GENUS = 3
MAX_GRAPH_WEIGHT = 12


@dataclass(frozen=True)
class GraphVertex:
    side: str          # "X" or "V"
    genus: int
    degree: int        # homology degree for the X side, fiber degree for the V side
    marks: int
    component: int = 0  # connected component of the divisor (V side)


@dataclass(frozen=True)
class BipartiteGraph:
    """One decorated degeneration graph: at most one X-vertex joined to
    V-vertices by edges with positive contact labels (grouped per V-vertex).
    A degree-0 configuration that sinks entirely into the divisor has no
    X-vertex at all."""

    x_vertex: Optional[GraphVertex]
    v_vertices: tuple[GraphVertex, ...]
    labels: tuple[tuple[int, ...], ...]  # per V-vertex, sorted descending

    @property
    def edge_count(self) -> int:
        return sum(len(ls) for ls in self.labels)

    @property
    def vertex_count(self) -> int:
        return (1 if self.x_vertex else 0) + len(self.v_vertices)

    @property
    def graph_genus(self) -> int:
        return self.edge_count - self.vertex_count + 1

    @property
    def total_genus(self) -> int:
        x_genus = self.x_vertex.genus if self.x_vertex else 0
        return x_genus + sum(v.genus for v in self.v_vertices) + self.graph_genus

    def validate(self, g: int, AdotV: int, k: int) -> None:
        if self.total_genus != g:
            raise ValueError(f"genus budget violated: {self.total_genus} != {g}")
        x_marks = self.x_vertex.marks if self.x_vertex else 0
        if x_marks + sum(v.marks for v in self.v_vertices) != k:
            raise ValueError("marked points not conserved")
        if sum(sum(ls) for ls in self.labels) != AdotV:
            raise ValueError("edge labels do not sum to the intersection number")
        for v, ls in zip(self.v_vertices, self.labels):
            if sum(ls) != v.degree:
                raise ValueError("fiber degree does not match incident labels")
            if any(s < 1 for s in ls):
                raise ValueError("edge labels must be positive")

    def describe(self) -> str:
        bits = []
        if self.x_vertex:
            bits.append(
                f"X(g={self.x_vertex.genus},A={self.x_vertex.degree},k={self.x_vertex.marks})"
            )
        for v, ls in zip(self.v_vertices, self.labels):
            comp = f"@{v.component}" if v.component else ""
            bits.append(f"V{comp}(g={v.genus},d={v.degree},s={list(ls)})")
        return " | ".join(bits)


@dataclass(frozen=True)
class GwSetting:
    n: int
    g: int
    k: int
    AdotV: int
    c1A: int
    A_is_zero: bool
    kappa_trivial: bool

    def __post_init__(self):
        if self.AdotV < 0:
            raise ValueError("A.V must be nonnegative")


# ---------------------------------------------------------------------------
# dimensions, hollowness, stability, verdicts
# ---------------------------------------------------------------------------

def vir_dim(setting: GwSetting, s: Optional[Sequence[int]] = None) -> int:
    """Expected real dimension of the (relative) moduli space."""
    base = setting.c1A + (setting.n - 3) * (1 - setting.g) + setting.k
    if s is None:
        return 2 * base
    s = tuple(s)
    if sum(s) != setting.AdotV:
        raise ContactMismatch(f"contact vector {s} does not sum to {setting.AdotV}")
    return 2 * (base + len(s) - sum(s))


def hollow_sufficient(
    n: int, g: int, delta: int, candidates: Iterable[tuple[int, int, int]]
) -> bool:
    """Sufficient hollowness criterion: every candidate class satisfies
    A'.V > <c1(X), A'> + (n-4)(1-g'); candidates are (g', c1A', A'.V)."""
    del delta  # recorded by the caller when building candidates
    return all(
        AdotV > c1A + (n - 4) * (1 - gp) for gp, c1A, AdotV in candidates
    )


def stability_sufficient(n: int, g: int, candidates: Iterable[tuple[int, int]]) -> bool:
    """Domain-stability criterion: A'.V >= <c1(X), A'> + n + 2g."""
    return all(AdotV >= c1A + n + 2 * g for c1A, AdotV in candidates)


def p4_line_candidates(delta: int, g: int, dmax: int = 5) -> list[tuple[int, int, int]]:
    """Candidate classes for degree-d' curves in 4-dimensional projective
    space against a degree-delta hypersurface, all genera up to g."""
    return [
        (gp, 5 * d, delta * d) for gp in range(g + 1) for d in range(1, dmax + 1)
    ]


GUARANTEED = "guaranteed"
GUARANTEED_PRIMARY_ONLY = "guaranteed_primary_only"
NOT_GUARANTEED = "not_guaranteed"


@dataclass(frozen=True)
class Verdict:
    status: str
    counter_example: Optional[int] = None

    def __str__(self) -> str:
        if self.counter_example is None:
            return self.status
        return f"{self.status} (see Example {self.counter_example})"


def thm1_verdict(setting: GwSetting) -> Verdict:
    """Does the absolute/relative comparison hold for this setting?

    guaranteed when (g, A) != (1, 0) and (n-5)g(g-1) >= 0; otherwise
    guaranteed for primary insertions when kappa is trivial, A != 0, and
    g = 2 or n != 4; otherwise not guaranteed, pointing at the
    counter-example family for the failing regime.
    """
    n, g = setting.n, setting.g
    if not (g == 1 and setting.A_is_zero) and (n - 5) * g * (g - 1) >= 0:
        return Verdict(GUARANTEED)
    if setting.kappa_trivial and not setting.A_is_zero and (g == 2 or n != 4):
        return Verdict(GUARANTEED_PRIMARY_ONLY)
    if setting.A_is_zero:
        return Verdict(NOT_GUARANTEED, counter_example=1)
    if not setting.kappa_trivial:
        return Verdict(NOT_GUARANTEED, counter_example=2)
    return Verdict(NOT_GUARANTEED, counter_example=3)


# ---------------------------------------------------------------------------
# graph enumeration and filtering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphConstraints:
    x_side_degree_one: bool = True
    marked_points_on_x: bool = True
    genus_cap_v: int = 3
    v_components: int = 1


def _partitions(total: int, max_part: Optional[int] = None):
    """Partitions of total as descending tuples."""
    if total == 0:
        yield ()
        return
    if max_part is None:
        max_part = total
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _vertex_shapes(weight: int):
    """Multisets of (d_v, labels) vertex decorations absorbing the weight."""
    # split the weight among vertices, then split each vertex load into labels
    for loads in _partitions(weight):
        pools = [list(_partitions(d)) for d in loads]

        def rec(i, acc):
            if i == len(loads):
                yield tuple(sorted(acc, reverse=True))
                return
            for labels in pools[i]:
                yield from rec(i + 1, acc + [(loads[i], labels)])

        yield from set(rec(0, []))


def enumerate_graphs(
    g: int, AdotV: int, k: int, constraints: GraphConstraints
) -> list[BipartiteGraph]:
    """All decorated bipartite graphs for the setting, up to isomorphism
    (divisor components stay distinguishable)."""
    if g > MAX_GRAPH_GENUS or AdotV > MAX_GRAPH_WEIGHT:
        raise ResourceBound(
            f"graph enumeration bounded by g <= {MAX_GRAPH_GENUS}, "
            f"A.V <= {MAX_GRAPH_WEIGHT}"
        )
    if not constraints.x_side_degree_one or not constraints.marked_points_on_x:
        raise ValueError("only the degree-1, marks-on-X regime is enumerated")
    if AdotV == 0:
        # the two one-vertex graphs: everything on one side or the other
        out = [
            BipartiteGraph(GraphVertex("X", g, 0, k), (), ()),
            BipartiteGraph(None, (GraphVertex("V", g, 0, k),), ((),)),
        ]
        for graph in out:
            graph.validate(g, 0, k)
        return out
    ncomp = constraints.v_components
    if ncomp > 1:
        if AdotV != ncomp:
            raise ValueError("disconnected divisors carry weight one per component")
        weights = [1] * ncomp
    else:
        weights = [AdotV]

    # per component, the possible vertex shape multisets
    shape_choices = [list(_vertex_shapes(w)) for w in weights]

    graphs: list[BipartiteGraph] = []

    def build(ci, shape_acc):
        if ci == len(weights):
            vertices = [
                (comp, d, labels)
                for comp, shapes in enumerate(shape_acc, start=1)
                for d, labels in shapes
            ]
            nv = len(vertices)
            edges = sum(len(labels) for _, _, labels in vertices)
            g_graph = edges - (1 + nv) + 1
            if g_graph < 0:
                return
            budget = g - g_graph
            if budget < 0:
                return
            # distribute genera over the V-vertices and the X-vertex
            def genera(i, left, acc):
                if i == nv:
                    vs = tuple(
                        GraphVertex("V", gv, d, 0, component=comp if ncomp > 1 else 0)
                        for (comp, d, labels), gv in zip(vertices, acc)
                    )
                    labels = tuple(tuple(labels) for _, _, labels in vertices)
                    graphs.append(
                        BipartiteGraph(GraphVertex("X", left, 1, k), vs, labels)
                    )
                    return
                for gv in range(min(left, constraints.genus_cap_v) + 1):
                    genera(i + 1, left - gv, acc + [gv])

            genera(0, budget, [])
            return
        for shapes in shape_choices[ci]:
            build(ci + 1, shape_acc + [shapes])

    build(0, [])
    # deduplicate (identical vertex multisets can arise from genus assignment order)
    seen = {}
    for graph in graphs:
        key = (
            graph.x_vertex,
            tuple(sorted(zip(graph.v_vertices, graph.labels), key=repr)),
        )
        seen.setdefault(key, graph)
    out = sorted(seen.values(), key=lambda gr: gr.describe())
    for graph in out:
        graph.validate(g, AdotV, k)
    return out


def vanishing_filter(
    graph: BipartiteGraph, n: int, kappa_trivial: bool, g_top: int
) -> bool:
    """Keep the graph iff every V-vertex is the basic (0, 1, 0, (1)) vertex or
    the single admissible top-genus vertex of the counter-example regime."""
    for v, labels in zip(graph.v_vertices, graph.labels):
        basic = v.genus == 0 and v.degree == 1 and v.marks == 0 and labels == (1,)
        if basic:
            continue
        if v.genus == 0:
            return False  # wrong-shape genus-0 vertex never contributes
        if v.genus < g_top:
            return False  # intermediate genera vanish
        if v.genus > g_top:
            return False
        # the exceptional top-genus vertex must have the single-edge,
        # label-1, no-marks shape ...
        if labels != (1,) or v.marks != 0:
            return False
        # ... and is admitted only where the vanishing lemma's hypotheses
        # fail for (g_v, d_v) and the regime matches a counter-example
        if (v.genus, v.degree) != (1, 0) and (n - 5) * v.genus * (v.genus - 1) >= 0:
            return False
        if kappa_trivial and n != 4:
            return False
    return True


# ---------------------------------------------------------------------------
# the three worked examples
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, DeltaPoly):
        return str(value)
    return rat_to_str(value)


def assemble_example_1(n: int, delta, alpha_mult=1) -> VerificationReport:
    """Genus-1 degree-0 consistency identities for a hypersurface in
    projective space; a polynomial identity when the degree is symbolic."""
    report = VerificationReport(command=f"verify example 1 (n={n}, delta={delta})")
    X = projective_space(n)
    V = hypersurface(n, DeltaPoly.delta() if delta == "symbolic" else int(delta))
    report.add("chi(X)", _fmt(euler_char(X)), "Euler characteristic")
    report.add("chi(V)", _fmt(euler_char(V)), "Euler characteristic")
    report.add(
        "absolute j-invariant chi(X)/2",
        _fmt(gw_genus1_deg0(X, None, "j")),
        "(1.11) first equality",
    )
    report.add(
        "relative j-invariant (chi(X)-chi(V))/2",
        _fmt(gw_genus1_deg0(X, V, "j")),
        "(1.11) second equality",
    )
    lhs, rhs = genus1_consistency_j(X, V)
    report.add(
        "degeneration consistency, j insertion",
        _fmt(rhs),
        "(4.12)",
        expected=_fmt(lhs),
    )
    report.add(
        "absolute alpha-invariant",
        _fmt(gw_genus1_deg0(X, None, ("alpha", alpha_mult))),
        "(1.12) first equality",
    )
    report.add(
        "relative alpha-invariant",
        _fmt(gw_genus1_deg0(X, V, ("alpha", alpha_mult))),
        "(1.12) second equality",
    )
    lhs, rhs = genus1_consistency_alpha(X, V, a=alpha_mult)
    report.add(
        "degeneration consistency, alpha insertion",
        _fmt(rhs),
        "(4.13)",
        expected=_fmt(lhs),
    )
    return report


def _graph_items(report, g, delta, k, constraints, n, kappa_trivial, expected_count):
    all_graphs = enumerate_graphs(g, delta, k, constraints)
    surviving = [
        gr for gr in all_graphs if vanishing_filter(gr, n, kappa_trivial, g_top=g)
    ]
    report.add(
        "surviving degeneration graphs",
        str(len(surviving)),
        "graph case analysis",
        expected=str(expected_count),
    )
    for i, graph in enumerate(surviving, start=1):
        report.add(f"graph {i}", graph.describe(), "contributing configuration")
    return surviving


def assemble_example_2(delta) -> VerificationReport:
    """The genus-2 degree-1 identity for the projective line relative to
    delta points, as a polynomial identity when delta is symbolic."""
    symbolic = delta == "symbolic"
    d = DeltaPoly.delta() if symbolic else int(delta)
    report = VerificationReport(command=f"verify example 2 (delta={delta})")
    if not symbolic:
        _graph_items(
            report,
            g=2,
            delta=int(delta),
            k=2,
            constraints=GraphConstraints(genus_cap_v=2, v_components=int(delta)),
            n=1,
            kappa_trivial=False,
            expected_count=1 + int(delta),
        )
    vertex_factor = problem_total(builtin_problem("fig7"))
    report.add(
        "top-genus vertex invariant",
        rat_to_str(vertex_factor),
        "(4.18)",
        expected="1",
    )
    psi4 = hodge_intersect(HodgeMonomial(2, 1, (4,), (0, 0)))
    report.add("<psi^4> on the 1-pointed genus-2 space", rat_to_str(psi4), "Table 2", expected="1/1152")
    correction = d * (vertex_factor * psi4)
    report.add("correction term delta/1152", _fmt(correction), "(1.13)")
    absolute = problem_total(builtin_problem("fig8-absolute"))
    report.add("absolute invariant", rat_to_str(absolute), "(4.25)+(4.26)", expected="1/240")
    implied = absolute - correction
    claimed = (
        DeltaPoly([Fraction(1, 240), Fraction(-1, 1152)])
        if symbolic
        else Fraction(1, 240) - Fraction(int(delta), 1152)
    )
    report.add(
        "implied relative invariant / delta!",
        _fmt(implied),
        "(1.13)",
        expected=_fmt(claimed),
    )
    if symbolic:
        for dv in range(1, 11):
            report.add(
                f"identity at delta={dv}",
                rat_to_str(implied(dv)),
                "(1.13)",
                expected=rat_to_str(Fraction(1, 240) - Fraction(dv, 1152)),
            )
        at1 = implied(1)
    else:
        at1 = implied if int(delta) == 1 else None
    if at1 is not None:
        relative = problem_total(builtin_problem("fig8-relative"))
        report.add(
            "localization cross-check at delta=1",
            rat_to_str(relative),
            "(4.24) second integral",
            expected=rat_to_str(at1),
        )
    return report


def assemble_example_3(delta) -> VerificationReport:
    """The genus-3 degree-1 identity for four-dimensional projective space
    relative to a degree-delta hypersurface."""
    symbolic = delta == "symbolic"
    d = DeltaPoly.delta() if symbolic else int(delta)
    report = VerificationReport(command=f"verify example 3 (delta={delta})")
    if not symbolic:
        _graph_items(
            report,
            g=3,
            delta=int(delta),
            k=1,
            constraints=GraphConstraints(genus_cap_v=3, v_components=1),
            n=4,
            kappa_trivial=True,
            expected_count=2,
        )
    pushforward = problem_total(builtin_problem("fig10"))
    report.add("top-genus push-forward degree", rat_to_str(pushforward), "(4.31)", expected="4")
    V = hypersurface(4, d)
    correction = degree_correction_genus3(V, multiplier=pushforward)
    claimed_corr = (
        DeltaPoly([0, Fraction(8, 72576), Fraction(-5, 72576), Fraction(1, 72576)])
        if symbolic
        else Fraction(int(delta) * (int(delta) ** 2 - 5 * int(delta) + 8), 72576)
    )
    report.add(
        "correction term delta(delta^2-5delta+8)/72576",
        _fmt(correction),
        "Lemma 4.4 + Table 1",
        expected=_fmt(claimed_corr),
    )
    absolute = problem_total(builtin_problem("p4-absolute"))
    report.add(
        "absolute invariant",
        rat_to_str(absolute),
        "(4.33)-(4.36) doubled",
        expected="-37/82944",
    )
    implied = absolute - correction
    if symbolic:
        claimed = DeltaPoly(
            [
                Fraction(-37, 82944),
                Fraction(-8, 72576),
                Fraction(5, 72576),
                Fraction(-1, 72576),
            ]
        )
        report.add(
            "implied relative invariant / delta!",
            _fmt(implied),
            "(1.14)",
            expected=_fmt(claimed),
        )
        for dv in range(1, 11):
            expect = Fraction(-37, 82944) - Fraction(dv * (dv * dv - 5 * dv + 8), 72576)
            report.add(
                f"identity at delta={dv}",
                rat_to_str(implied(dv)),
                "(1.14)",
                expected=rat_to_str(expect),
            )
        at1 = implied(1)
    else:
        report.add("implied relative invariant / delta!", _fmt(implied), "(1.14)")
        at1 = implied if int(delta) == 1 else None
    if at1 is not None:
        relative = problem_total(builtin_problem("p4-relative-delta1"))
        report.add(
            "localization cross-check at delta=1",
            rat_to_str(relative),
            "(4.37)-(4.42)",
            expected=rat_to_str(at1),
        )
    return report


def assemble_example(example_id: int, delta="symbolic", n: int = 4) -> VerificationReport:
    if example_id == 1:
        return assemble_example_1(n=n, delta=delta)
    if example_id == 2:
        return assemble_example_2(delta)
    if example_id == 3:
        return assemble_example_3(delta)
    raise ValueError(f"unknown example {example_id}")
