"""Command-line surface.

Subcommands: psi, hodge, chern, gw10, localize, graphs, thm1, dim, verify,
selftest.  Every numeric output is an exact rational; exit status is 0 on
PASS, 1 on FAIL (an expectation did not match), 2 on usage or parse errors,
and 3 on internal errors.  The environment variable GWVERIFY_DATA_DIR
overrides the packaged data-file root.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .chern import degree_correction_genus3, euler_char, hypersurface, projective_space
from .errors import (
    ExpectationMismatch,
    GwError,
    ParseError,
    SchemaError,
    UnknownMonomial,
    UnknownRubberKey,
)
from .hodge import HodgeMonomial, hodge_intersect
from .localization import (
    builtin_names,
    locus_contribution,
    problem_symbolic_total,
    problem_total,
    resolve_problem,
)
from .psi import PsiKey, psi_intersect
from .reports import VerificationReport
from .scalars import rat_from_str, rat_to_str
from .selftest import run_selftest
from .sumformula import (
    GraphConstraints,
    GwSetting,
    assemble_example,
    enumerate_graphs,
    thm1_verdict,
    vanishing_filter,
    vir_dim,
)


def _ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(p) for p in text.split(",")]


def _space(name: str):
    name = name.upper()
    if not name.startswith("P") or not name[1:].isdigit():
        raise ParseError(f"unknown space {name!r}; use P1..P6")
    return projective_space(int(name[1:]))


def cmd_psi(args) -> int:
    key = PsiKey(args.g, tuple(_ints(args.exponents)))
    print(rat_to_str(psi_intersect(key)))
    return 0


def cmd_hodge(args) -> int:
    psi = tuple(_ints(args.psi)) if args.psi else (0,) * args.n
    lam = tuple(_ints(getattr(args, "lambda"))) if getattr(args, "lambda") else (0,) * args.g
    monomial = HodgeMonomial(args.g, args.n, psi, lam)
    print(rat_to_str(hodge_intersect(monomial)))
    return 0


def _chern_vector(data) -> str:
    parts = [rat_to_str(data.total_chern[0])]
    for i, c in enumerate(data.total_chern[1:], start=1):
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {rat_to_str(abs(c))}*x^{i}")
    return " ".join(parts)


def cmd_chern(args) -> int:
    X = _space(args.space)
    report = VerificationReport(command="chern")
    report.add(f"total chern class of {X.name}", _chern_vector(X))
    report.add(f"chi({X.name})", rat_to_str(euler_char(X)))
    if args.hypersurface is not None:
        V = hypersurface(X.dim, args.hypersurface)
        report.add(f"total chern class of {V.name}", _chern_vector(V))
        report.add(f"chi({V.name})", rat_to_str(euler_char(V)))
        if V.dim == 3:
            report.add(
                "genus-3 degree correction",
                rat_to_str(degree_correction_genus3(V)),
                "Lemma 4.4 bracket with the degree-4 factor",
            )
    print(report.to_json() if args.json else report.to_text())
    return 0


def cmd_gw10(args) -> int:
    from .chern import gw_genus1_deg0

    X = _space(args.X)
    V = hypersurface(X.dim, args.V) if args.V is not None else None
    if args.insertion == "j":
        insertion = "j"
    elif args.insertion.startswith("alpha:"):
        insertion = ("alpha", rat_from_str(args.insertion.split(":", 1)[1]))
    else:
        raise ParseError(f"insertion must be 'j' or 'alpha:<mult>', got {args.insertion!r}")
    print(rat_to_str(gw_genus1_deg0(X, V, insertion)))
    return 0


def cmd_localize(args) -> int:
    problem = resolve_problem(args.config)
    report = VerificationReport(command=f"localize {problem.label}")
    for spec in sorted(problem.loci, key=lambda s: s.label):
        if spec.vanishes is not None:
            report.add(f"locus {spec.label}", f"vanishes ({spec.vanishes})", spec.source)
            continue
        report.add(f"locus {spec.label}", str(locus_contribution(spec)), spec.source)
    expected = rat_from_str(args.expect) if args.expect else problem.expected
    try:
        total = problem_total(problem)
        report.add(
            "total",
            rat_to_str(total),
            problem.source,
            expected=None if expected is None else rat_to_str(expected),
        )
    except ExpectationMismatch as exc:
        report.add("total", str(exc), problem.source, expected=rat_to_str(expected))
    if args.eval:
        weights = [Fraction(w) for w in args.eval.split(",")]
        value = problem_symbolic_total(problem).eval_at(weights)
        report.add(f"evaluation at ({args.eval})", rat_to_str(value))
    print(report.to_json() if args.json else report.to_text())
    return 0 if report.status == "PASS" else 1


def cmd_graphs(args) -> int:
    if args.example == 2:
        cons = GraphConstraints(genus_cap_v=2, v_components=args.delta)
        g, k, n, kappa = 2, 2, 1, False
    elif args.example == 3:
        cons = GraphConstraints(genus_cap_v=3, v_components=1)
        g, k, n, kappa = 3, 1, 4, True
    else:
        raise ParseError("graphs supports --example 2 or 3")
    graphs = enumerate_graphs(g, args.delta, k, cons)
    rows = [
        (graph, vanishing_filter(graph, n, kappa, g_top=g)) for graph in graphs
    ]
    if args.surviving:
        rows = [(graph, keep) for graph, keep in rows if keep]
    for graph, keep in rows:
        flag = "contributes" if keep else "vanishes"
        print(f"{flag:11s}  {graph.describe()}")
    print(f"{sum(1 for _, keep in rows if keep)} of {len(graphs)} graphs contribute")
    return 0


def cmd_thm1(args) -> int:
    s = GwSetting(
        n=args.n,
        g=args.g,
        k=0,
        AdotV=0,
        c1A=0,
        A_is_zero=(args.A == "zero"),
        kappa_trivial=args.primary or args.kappa == "trivial",
    )
    print(thm1_verdict(s))
    return 0


def cmd_dim(args) -> int:
    s = GwSetting(
        n=args.n,
        g=args.g,
        k=args.k,
        AdotV=args.AdotV,
        c1A=args.c1A,
        A_is_zero=False,
        kappa_trivial=True,
    )
    contact = _ints(args.s) if args.s is not None else None
    print(vir_dim(s, contact))
    return 0


def cmd_verify(args) -> int:
    delta = "symbolic" if args.symbolic or args.delta is None else args.delta
    report = assemble_example(args.example, delta, n=args.n)
    print(report.to_json() if args.json else report.to_text())
    return 0 if report.status == "PASS" else 1


def cmd_selftest(args) -> int:
    report = run_selftest()
    print(report.to_json() if args.json else report.to_text())
    if report.status == "PASS":
        return 0
    return 3 if report.error else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwverify",
        description="Exact-rational cross-checker for low-genus Gromov-Witten identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("psi", help="pure psi-class intersection number")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--exponents", required=True, help="comma-separated, e.g. 3,2")
    p.set_defaults(fn=cmd_psi)

    p = sub.add_parser("hodge", help="mixed psi/lambda intersection number")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--psi", default="", help="per-point exponents, comma-separated")
    p.add_argument("--lambda", default="", help="lambda exponents e1,..,eg")
    p.set_defaults(fn=cmd_hodge)

    p = sub.add_parser("chern", help="Chern data of a projective space or hypersurface")
    p.add_argument("--space", required=True, help="P1..P6")
    p.add_argument("--hypersurface", type=int, default=None, help="divisor degree")
    p.add_argument("--report", action="store_true", help="(default output is the report)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_chern)

    p = sub.add_parser("gw10", help="genus-1 degree-0 invariants")
    p.add_argument("--X", required=True, help="P1..P6")
    p.add_argument("--V", type=int, default=None, help="hypersurface degree")
    p.add_argument("--insertion", default="j", help="'j' or 'alpha:<mult>'")
    p.set_defaults(fn=cmd_gw10)

    p = sub.add_parser("localize", help="evaluate a localization diagram file")
    p.add_argument(
        "--config",
        required=True,
        help=f"diagram file path or builtin name ({', '.join(sorted(builtin_names()))})",
    )
    p.add_argument("--expect", default=None, help="expected total p/q")
    p.add_argument("--eval", default=None, help="numeric weight pair w1,w2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_localize)

    p = sub.add_parser("graphs", help="degeneration graphs for the worked examples")
    p.add_argument("--example", type=int, required=True, choices=(2, 3))
    p.add_argument("--delta", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", default=True)
    group.add_argument("--surviving", action="store_true")
    p.set_defaults(fn=cmd_graphs)

    p = sub.add_parser("thm1", help="guarantee verdict for a setting")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--primary", action="store_true", help="trivial moduli constraint")
    p.add_argument("--kappa", choices=("trivial", "nontrivial"), default="trivial")
    p.add_argument("--A", choices=("zero", "nonzero"), default="nonzero")
    p.set_defaults(fn=cmd_thm1)

    p = sub.add_parser("dim", help="expected dimension of a moduli space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--c1A", type=int, required=True)
    p.add_argument("--AdotV", type=int, default=0)
    p.add_argument("--s", default=None, help="contact vector s1,s2,...")
    p.set_defaults(fn=cmd_dim)

    p = sub.add_parser("verify", help="assemble and check a worked example")
    p.add_argument("--example", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--symbolic", action="store_true", help="polynomial identity in the degree")
    p.add_argument("--n", type=int, default=4, help="ambient dimension (example 1)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("selftest", help="run the full acceptance suite")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ParseError, SchemaError, UnknownMonomial, UnknownRubberKey, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ExpectationMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return 1
    except GwError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # never panic
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
