"""Equivariant localization evaluator.

Fixed loci are data, not code: each shipped diagram file describes the fixed
loci of one localization computation (base space, insertion, obstruction
euler class, deformation euler class, multiplicity), with expressions in the
class mini-grammar.  A locus contribution is

    multiplicity * integral(insertion * obstruction / deformation)

and a problem total is the sum over non-vanishing loci, times a declared
symmetry multiplier, plus the declared weight-swapped copy when present.
Totals must be weight-independent rationals.

A locus whose reduction to smaller moduli is spelled out in the file (the
boundary-constraint push-forwards of the genus-2 computation) carries a
``terms`` list instead of a single expression triple; its contribution is
the sum of the term contributions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from ._data import load_json
from .errors import (
    BaseMismatch,
    ExpectationMismatch,
    NonConstantSum,
    NonInvertible,
    NonInvertibleDeformation,
    ParseError,
    SchemaError,
)
from .exprs import parse_class
from .ring import (
    BaseSpace,
    DMFactor,
    PointFactor,
    ProjLineFactor,
    RubberFactor,
    TautClass,
    tc_integrate,
    tc_invert,
)
from .scalars import ES_ZERO, EquivariantScalar, rat_from_str

BUILTIN_ALIASES = {
    "fig7": "fig7",
    "lemma4.3": "fig7",
    "fig10": "fig10",
    "lemma4.5": "fig10",
    "fig8-absolute": "fig8_absolute",
    "fig8-relative": "fig8_relative",
    "p4-absolute": "fig11_absolute",
    "p4-relative-delta1": "fig11_relative",
}


@dataclass(frozen=True)
class LocusTerm:
    base: BaseSpace
    multiplicity: Fraction
    insertion: TautClass
    obstruction: TautClass
    deformation: TautClass
    note: str = ""


@dataclass(frozen=True)
class FixedLocusSpec:
    label: str
    source: str = ""
    vanishes: Optional[str] = None
    terms: tuple[LocusTerm, ...] = ()


@dataclass(frozen=True)
class LocalizationProblem:
    label: str
    loci: tuple[FixedLocusSpec, ...]
    symmetry_multiplier: Fraction = Fraction(1)
    weight_swap: bool = False
    expected: Optional[Fraction] = None
    source: str = ""


def _term_contribution(term: LocusTerm) -> EquivariantScalar:
    try:
        inv = tc_invert(term.deformation)
    except NonInvertible as exc:
        raise NonInvertibleDeformation(str(exc)) from exc
    integrand = term.insertion * term.obstruction * inv
    return tc_integrate(integrand).scale(term.multiplicity)


# contributions of the long-lived builtin specs are cached by identity
_CONTRIB_CACHE: dict[int, tuple["FixedLocusSpec", EquivariantScalar]] = {}


def locus_contribution(spec: FixedLocusSpec) -> EquivariantScalar:
    """The exact contribution of one non-vanishing fixed locus."""
    if spec.vanishes is not None:
        raise ValueError(f"locus {spec.label!r} is tagged vanishing: {spec.vanishes}")
    hit = _CONTRIB_CACHE.get(id(spec))
    if hit is not None and hit[0] is spec:
        return hit[1]
    total = ES_ZERO
    for term in spec.terms:
        total = total + _term_contribution(term)
    _CONTRIB_CACHE[id(spec)] = (spec, total)
    return total


def problem_total(problem: LocalizationProblem) -> Fraction:
    """Sum the problem's loci; the result must be a weight-free rational."""
    total = ES_ZERO
    for spec in sorted(problem.loci, key=lambda s: s.label):
        if spec.vanishes is not None:
            continue
        total = total + locus_contribution(spec)
    total = total.scale(problem.symmetry_multiplier)
    if problem.weight_swap:
        total = total + total.swap_weights()
    value = total.is_constant()
    if value is None:
        raise NonConstantSum(
            f"problem {problem.label!r}: weight symbols survive in {total}"
        )
    if problem.expected is not None and value != problem.expected:
        raise ExpectationMismatch(
            f"problem {problem.label!r}: computed {value}, expected {problem.expected}"
        )
    return value


def problem_symbolic_total(problem: LocalizationProblem) -> EquivariantScalar:
    """The total before the constancy assertion (for numeric spot checks)."""
    total = ES_ZERO
    for spec in sorted(problem.loci, key=lambda s: s.label):
        if spec.vanishes is not None:
            continue
        total = total + locus_contribution(spec)
    total = total.scale(problem.symmetry_multiplier)
    if problem.weight_swap:
        total = total + total.swap_weights()
    return total


# ---------------------------------------------------------------------------
# schema
# ---------------------------------------------------------------------------

def _parse_factor(raw: dict, where: str):
    kind = raw.get("kind")
    try:
        if kind == "dm":
            return DMFactor(int(raw["g"]), int(raw["n"]))
        if kind == "p1":
            return ProjLineFactor()
        if kind == "point":
            return PointFactor()
        if kind == "rubber":
            return RubberFactor(int(raw["g"]), int(raw.get("n", 0)))
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"{where}: bad factor {raw!r} ({exc})") from exc
    raise SchemaError(f"{where}: unknown factor kind {kind!r}")


def _parse_term(raw: dict, where: str) -> LocusTerm:
    factors = raw.get("base")
    if not isinstance(factors, list) or not factors:
        raise SchemaError(f"{where}: missing or empty base")
    base = BaseSpace(tuple(_parse_factor(f, where) for f in factors))
    try:
        mult = rat_from_str(str(raw.get("multiplicity", "1")))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: bad multiplicity ({exc})") from exc
    out = {}
    for name in ("insertion", "obstruction", "deformation"):
        try:
            out[name] = parse_class(str(raw.get(name, "1")), base)
        except (ParseError, BaseMismatch) as exc:
            raise SchemaError(f"{where}: bad {name} expression: {exc}") from exc
    return LocusTerm(
        base=base,
        multiplicity=mult,
        insertion=out["insertion"],
        obstruction=out["obstruction"],
        deformation=out["deformation"],
        note=str(raw.get("note", "")),
    )


def _parse_locus(raw: dict, where: str) -> FixedLocusSpec:
    label = raw.get("label")
    if not label:
        raise SchemaError(f"{where}: locus without a label")
    where = f"{where} locus {label!r}"
    vanishes = raw.get("vanishes")
    if vanishes is not None:
        return FixedLocusSpec(label=label, source=str(raw.get("source", "")), vanishes=str(vanishes))
    if "terms" in raw:
        if any(k in raw for k in ("insertion", "obstruction", "deformation")):
            raise SchemaError(f"{where}: give either expression fields or terms, not both")
        terms = tuple(_parse_term(t, f"{where} term {i}") for i, t in enumerate(raw["terms"]))
        if not terms:
            raise SchemaError(f"{where}: empty terms list")
    else:
        terms = (_parse_term(raw, where),)
    for i, term in enumerate(terms):
        if term.deformation.scalar_part().is_zero():
            raise SchemaError(
                f"{where} term {i}: deformation has no invertible scalar part"
            )
    return FixedLocusSpec(label=label, source=str(raw.get("source", "")), terms=terms)


def parse_problem(payload: dict, where: str) -> LocalizationProblem:
    version = payload.get("schema_version", 1)
    if version != 1:
        raise SchemaError(f"{where}: unsupported schema_version {version!r}")
    label = payload.get("label")
    if not label:
        raise SchemaError(f"{where}: missing problem label")
    raw_loci = payload.get("loci")
    if not isinstance(raw_loci, list) or not raw_loci:
        raise SchemaError(f"{where}: a problem needs at least one locus")
    loci = tuple(_parse_locus(raw, where) for raw in raw_loci)
    try:
        mult = rat_from_str(str(payload.get("symmetry_multiplier", "1")))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: bad symmetry_multiplier ({exc})") from exc
    expected = payload.get("expected")
    return LocalizationProblem(
        label=label,
        loci=loci,
        symmetry_multiplier=mult,
        weight_swap=bool(payload.get("weight_swap", False)),
        expected=None if expected is None else rat_from_str(str(expected)),
        source=str(payload.get("source", "")),
    )


def load_problem(path: str | Path) -> LocalizationProblem:
    """Load a diagram file from an explicit path."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise SchemaError(f"{path}: no such diagram file") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return parse_problem(payload, str(path))


_PROBLEM_CACHE: dict[str, LocalizationProblem] = {}


def builtin_problem(name: str) -> LocalizationProblem:
    """Load one of the shipped diagram files by its public name."""
    stem = BUILTIN_ALIASES.get(name)
    if stem is None:
        raise SchemaError(
            f"unknown builtin problem {name!r}; known: {sorted(BUILTIN_ALIASES)}"
        )
    cached = _PROBLEM_CACHE.get(stem)
    if cached is not None:
        return cached
    payload, where = load_json("diagrams", f"{stem}.json")
    problem = parse_problem(payload, where)
    _PROBLEM_CACHE[stem] = problem
    return problem


def reset_problems() -> None:
    """Drop cached problems (used after changing GWVERIFY_DATA_DIR)."""
    _PROBLEM_CACHE.clear()
    _CONTRIB_CACHE.clear()


def builtin_names() -> list[str]:
    return sorted(set(BUILTIN_ALIASES.values()))


def resolve_problem(spec: str) -> LocalizationProblem:
    """Accept either a builtin name or a filesystem path."""
    if spec in BUILTIN_ALIASES:
        return builtin_problem(spec)
    return load_problem(spec)
