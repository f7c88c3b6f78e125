"""Truncated graded ring of tautological classes over a product base space.

Generators are the psi-classes at marked points and lambda-classes on each
Deligne-Mumford factor, the hyperplane class x on each projective-line
factor (x^2 = 0), and the target psi-class on each rubber factor.
Coefficients are :class:`EquivariantScalar`; the equivariant weights do not
count toward the truncation degree.  Monomials are truncated per factor at
the factor dimension: anything deeper can never integrate to a nonzero
value, and degrees only grow under multiplication.

Integration is factor-wise: Deligne-Mumford factors evaluate through the
mixed psi/lambda oracle, rubber factors through the rubber table, and a
projective-line factor contributes the coefficient of x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import BaseMismatch, NonInvertible
from .hodge import HodgeMonomial, RubberKey, hodge_intersect, rubber_intersect
from .scalars import ES_ONE, ES_ZERO, EquivariantScalar, Rational

Mono = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DMFactor:
    g: int
    n: int

    @property
    def dim(self) -> int:
        return 3 * self.g - 3 + self.n

    def exps(self) -> int:
        return self.n + self.g

    def degree(self, e: tuple[int, ...]) -> int:
        return sum(e[: self.n]) + sum((i + 1) * k for i, k in enumerate(e[self.n :]))

    def __str__(self) -> str:
        return f"DM({self.g},{self.n})"


@dataclass(frozen=True)
class ProjLineFactor:
    @property
    def dim(self) -> int:
        return 1

    def exps(self) -> int:
        return 1

    def degree(self, e: tuple[int, ...]) -> int:
        return e[0]

    def __str__(self) -> str:
        return "P1"


@dataclass(frozen=True)
class PointFactor:
    @property
    def dim(self) -> int:
        return 0

    def exps(self) -> int:
        return 0

    def degree(self, e: tuple[int, ...]) -> int:
        return 0

    def __str__(self) -> str:
        return "pt"


@dataclass(frozen=True)
class RubberFactor:
    """Degree-1 rubber space with the ((1),(1)) contact pattern; carries the
    target psi-class and the lambda-classes of its genus-g Hodge bundle."""

    g: int
    n: int = 0

    @property
    def dim(self) -> int:
        return self.n - 1 if self.g == 0 else 2 * self.g - 1

    def exps(self) -> int:
        return 1 + self.g

    def degree(self, e: tuple[int, ...]) -> int:
        return e[0] + sum((i + 1) * k for i, k in enumerate(e[1:]))

    def __str__(self) -> str:
        return f"Rubber({self.g})" if self.n == 0 else f"Rubber({self.g},{self.n})"


Factor = Union[DMFactor, ProjLineFactor, PointFactor, RubberFactor]


@dataclass(frozen=True)
class BaseSpace:
    factors: tuple[Factor, ...]

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    def zero_mono(self) -> Mono:
        return tuple((0,) * f.exps() for f in self.factors)

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors) if self.factors else "pt"


class TautClass:
    """A truncated polynomial in the tautological generators over a base."""

    __slots__ = ("base", "terms")

    def __init__(self, base: BaseSpace, terms: dict[Mono, EquivariantScalar] | None = None):
        self.base = base
        self.terms: dict[Mono, EquivariantScalar] = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero():
                    self.terms[m] = c

    # -- constructors --------------------------------------------------------
    @classmethod
    def scalar(cls, base: BaseSpace, c: EquivariantScalar | Rational | int) -> "TautClass":
        if not isinstance(c, EquivariantScalar):
            c = EquivariantScalar.from_rational(Fraction(c))
        return cls(base, {base.zero_mono(): c})

    @classmethod
    def one(cls, base: BaseSpace) -> "TautClass":
        return cls.scalar(base, ES_ONE)

    @classmethod
    def generator(cls, base: BaseSpace, factor: int, slot: int) -> "TautClass":
        mono = [list(e) for e in base.zero_mono()]
        mono[factor][slot] += 1
        m = tuple(tuple(e) for e in mono)
        if not _mono_ok(base, m):
            return cls(base)
        return cls(base, {m: ES_ONE})

    @classmethod
    def psi(cls, base: BaseSpace, factor: int, point: int) -> "TautClass":
        f = base.factors[factor]
        if not isinstance(f, DMFactor) or not 1 <= point <= f.n:
            raise BaseMismatch(f"no psi[{factor},{point}] on {base}")
        return cls.generator(base, factor, point - 1)

    @classmethod
    def lam(cls, base: BaseSpace, factor: int, index: int) -> "TautClass":
        f = base.factors[factor]
        if isinstance(f, DMFactor) and 1 <= index <= f.g:
            return cls.generator(base, factor, f.n + index - 1)
        if isinstance(f, RubberFactor) and 1 <= index <= f.g:
            return cls.generator(base, factor, index)
        raise BaseMismatch(f"no lam[{factor},{index}] on {base}")

    @classmethod
    def x(cls, base: BaseSpace, factor: int) -> "TautClass":
        if not isinstance(base.factors[factor], ProjLineFactor):
            raise BaseMismatch(f"no x[{factor}] on {base}")
        return cls.generator(base, factor, 0)

    @classmethod
    def psiinf(cls, base: BaseSpace, factor: int) -> "TautClass":
        if not isinstance(base.factors[factor], RubberFactor):
            raise BaseMismatch(f"no psiinf[{factor}] on {base}")
        return cls.generator(base, factor, 0)

    # -- structure -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def scalar_part(self) -> EquivariantScalar:
        return self.terms.get(self.base.zero_mono(), ES_ZERO)

    def degree_parts(self) -> dict[int, "TautClass"]:
        out: dict[int, TautClass] = {}
        for m, c in self.terms.items():
            d = _mono_degree(self.base, m)
            out.setdefault(d, TautClass(self.base)).terms[m] = c
        return out

    # -- arithmetic -----------------------------------------------------------
    def _require_same_base(self, other: "TautClass") -> None:
        if self.base != other.base:
            raise BaseMismatch(f"bases differ: {self.base} vs {other.base}")

    def __add__(self, other: "TautClass") -> "TautClass":
        self._require_same_base(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ES_ZERO) + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        res = TautClass(self.base)
        res.terms = out
        return res

    def __neg__(self) -> "TautClass":
        res = TautClass(self.base)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other: "TautClass") -> "TautClass":
        return self + (-other)

    def scale(self, c: EquivariantScalar | Rational | int) -> "TautClass":
        if not isinstance(c, EquivariantScalar):
            c = EquivariantScalar.from_rational(Fraction(c))
        res = TautClass(self.base)
        if c.is_zero():
            return res
        res.terms = {m: k * c for m, k in self.terms.items()}
        return res

    def __mul__(self, other: "TautClass") -> "TautClass":
        self._require_same_base(other)
        out: dict[Mono, EquivariantScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(
                    tuple(a + b for a, b in zip(e1, e2)) for e1, e2 in zip(m1, m2)
                )
                if not _mono_ok(self.base, m):
                    continue
                s = out.get(m, ES_ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        res = TautClass(self.base)
        res.terms = out
        return res

    def __pow__(self, k: int) -> "TautClass":
        if k < 0:
            raise ValueError("negative power of a ring class; use tc_invert")
        out = TautClass.one(self.base)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TautClass)
            and self.base == other.base
            and self.terms == other.terms
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (_mono_degree(self.base, m), m)):
            bits.append(f"({self.terms[m]})*{_mono_str(self.base, m)}")
        return " + ".join(bits)

    __repr__ = __str__


def _mono_ok(base: BaseSpace, m: Mono) -> bool:
    return all(f.degree(e) <= f.dim for f, e in zip(base.factors, m))


def _mono_degree(base: BaseSpace, m: Mono) -> int:
    return sum(f.degree(e) for f, e in zip(base.factors, m))


def _mono_str(base: BaseSpace, m: Mono) -> str:
    names = []
    for fi, (f, e) in enumerate(zip(base.factors, m)):
        if isinstance(f, DMFactor):
            labels = [f"psi[{fi},{i+1}]" for i in range(f.n)] + [
                f"lam[{fi},{j+1}]" for j in range(f.g)
            ]
        elif isinstance(f, ProjLineFactor):
            labels = [f"x[{fi}]"]
        elif isinstance(f, RubberFactor):
            labels = [f"psiinf[{fi}]"] + [f"lam[{fi},{j+1}]" for j in range(f.g)]
        else:
            labels = []
        for lbl, k in zip(labels, e):
            if k == 1:
                names.append(lbl)
            elif k > 1:
                names.append(f"{lbl}^{k}")
    return "*".join(names) if names else "1"


# ---------------------------------------------------------------------------
# ring operations
# ---------------------------------------------------------------------------

def tc_mul(a: TautClass, b: TautClass) -> TautClass:
    return a * b


def tc_invert(a: TautClass) -> TautClass:
    """Geometric-series inverse, truncated at the base dimension."""
    a0 = a.scalar_part()
    if a0.is_zero():
        raise NonInvertible("class has no invertible degree-0 part")
    inv0 = a0.inverse()
    nilpotent = a - TautClass.scalar(a.base, a0)
    out = TautClass.scalar(a.base, inv0)
    power = TautClass.one(a.base)
    sign = Fraction(-1)
    for k in range(1, a.base.dim + 1):
        power = power * nilpotent
        if power.is_zero():
            break
        out = out + power.scale(inv0 ** (k + 1)).scale(sign**k)
    return out


def tc_integrate(a: TautClass) -> EquivariantScalar:
    """Pair the top-degree part against the base, factor by factor."""
    total = ES_ZERO
    for m in sorted(a.terms, key=lambda m: m):
        if _mono_degree(a.base, m) != a.base.dim:
            continue
        val = Fraction(1)
        for f, e in zip(a.base.factors, m):
            val *= _factor_integral(f, e)
            if val == 0:
                break
        if val != 0:
            total = total + a.terms[m].scale(val)
    return total


def _factor_integral(f: Factor, e: tuple[int, ...]) -> Fraction:
    if isinstance(f, DMFactor):
        return hodge_intersect(HodgeMonomial(f.g, f.n, e[: f.n], e[f.n :]))
    if isinstance(f, ProjLineFactor):
        return Fraction(1) if e[0] == 1 else Fraction(0)
    if isinstance(f, PointFactor):
        return Fraction(1)
    if isinstance(f, RubberFactor):
        return rubber_intersect(RubberKey(f.g, e[0], e[1:], n=f.n))
    raise TypeError(f"unknown factor {f!r}")


def hodge_twist(
    base: BaseSpace,
    factor: int,
    weights: Sequence[TautClass | EquivariantScalar],
) -> TautClass:
    """prod_w (w^g - lam_1 w^(g-1) + ... + (-1)^g lam_g) on the given factor.

    Weights may be ring elements (for instance 2x + a1); the product is
    truncated like any other ring product.
    """
    f = base.factors[factor]
    if not isinstance(f, (DMFactor, RubberFactor)):
        raise BaseMismatch(f"factor {factor} of {base} carries no Hodge bundle")
    g = f.g
    out = TautClass.one(base)
    for w in weights:
        if isinstance(w, EquivariantScalar):
            w = TautClass.scalar(base, w)
        term = TautClass(base)
        for i in range(g + 1):
            piece = (w ** (g - i)).scale(Fraction(-1) ** i)
            if i > 0:
                piece = piece * TautClass.lam(base, factor, i)
            term = term + piece
        out = out * term
    return out


def hodge_twist_by_genus(
    base: BaseSpace, g: int, weights: Sequence[TautClass | EquivariantScalar]
) -> TautClass:
    """Bind the twist to the unique genus-g factor of the base."""
    matches = [
        i
        for i, f in enumerate(base.factors)
        if isinstance(f, (DMFactor, RubberFactor)) and f.g == g
    ]
    if len(matches) != 1:
        raise BaseMismatch(
            f"hodgetwist({g}; ...) needs exactly one genus-{g} factor on {base}"
        )
    return hodge_twist(base, matches[0], weights)
