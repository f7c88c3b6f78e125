"""Chern-class calculus for projective spaces and hypersurfaces, Euler
characteristics, log-tangent pairings, the genus-1 degree-0 invariants, and
the genus-3 Hodge-bundle contraction used for the degree-correction term.

The hypersurface degree may be symbolic: :class:`DeltaPoly` is a univariate
polynomial in the degree symbol with exact rational coefficients, so the
identity checks run as polynomial identities rather than per-degree samples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Union

from .errors import InclusionUndeclared, InternalMismatch
from .hodge import HodgeMonomial, hodge_intersect

Coeff = Union[Fraction, "DeltaPoly"]


class DeltaPoly:
    """Exact polynomial in the hypersurface-degree symbol."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction | int]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def delta(cls) -> "DeltaPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "DeltaPoly":
        return cls([c])

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_const(self) -> Optional[Fraction]:
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) == 1:
            return self.coeffs[0]
        return None

    def __call__(self, value) -> Fraction:
        out = Fraction(0)
        v = Fraction(value)
        for c in reversed(self.coeffs):
            out = out * v + c
        return out

    @staticmethod
    def _lift(other) -> "DeltaPoly":
        if isinstance(other, DeltaPoly):
            return other
        return DeltaPoly([Fraction(other)])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return DeltaPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (o.coeffs[i] if i < len(o.coeffs) else 0)
                for i in range(n)
            ]
        )

    __radd__ = __add__

    def __neg__(self):
        return DeltaPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return DeltaPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return DeltaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, DeltaPoly):
            c = other.as_const()
            if c is None:
                raise ValueError("division only by constants")
            other = c
        return self * Fraction(1, 1) * Fraction(other) ** -1

    def __pow__(self, n: int):
        out = DeltaPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return self.coeffs == self._lift(other).coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "delta" if i == 1 else f"delta^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _ser_mul(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        for j, bj in enumerate(b[: n + 1 - i]):
            out[i + j] = out[i + j] + ai * bj
    return out


@dataclass(frozen=True)
class ChernData:
    """Total Chern class of a space with monogenerated cohomology.

    ``total_chern[i]`` is the coefficient of x^i; ``degree_map`` is the value
    of <x^dim>.  ``divisor_multiple`` is set when the space was built as a
    divisor of class (multiple * x) in an ambient space.
    """

    name: str
    dim: int
    total_chern: tuple
    degree_map: Coeff
    divisor_multiple: Optional[Coeff] = None

    def c(self, i: int):
        if i < 0:
            return Fraction(0)
        return self.total_chern[i] if i <= self.dim else Fraction(0)

    def pair(self, coeffs: Sequence) -> Coeff:
        """Pair a class given by x-power coefficients against the space."""
        if len(coeffs) <= self.dim:
            return Fraction(0)
        return coeffs[self.dim] * self.degree_map


def projective_space(n: int) -> ChernData:
    if n < 1:
        raise ValueError("projective space needs n >= 1")
    c = tuple(Fraction(comb(n + 1, i)) for i in range(n + 1))
    return ChernData(name=f"P{n}", dim=n, total_chern=c, degree_map=Fraction(1))


def hypersurface(n: int, delta) -> ChernData:
    """Degree-delta hypersurface in n-dimensional projective space.

    The degree may be an integer or the symbolic generator; n = 1 gives the
    dimension-0 case (delta points on the line).
    """
    if n < 1:
        raise ValueError("ambient projective space needs n >= 1")
    if isinstance(delta, int):
        delta = Fraction(delta)
    dim = n - 1
    amb = [Fraction(comb(n + 1, i)) for i in range(dim + 1)]
    inv = [(-delta) ** k for k in range(dim + 1)]  # 1/(1+delta*x)
    c = tuple(_ser_mul(amb, inv, dim))
    name = f"V{delta}(P{n})"
    return ChernData(
        name=name, dim=dim, total_chern=c, degree_map=delta, divisor_multiple=delta
    )


def euler_char(g: ChernData) -> Coeff:
    """Top Chern number <c_dim>."""
    return g.c(g.dim) * g.degree_map


def log_tangent_pairing(X: ChernData, V: ChernData, k: int, alpha_mult=1) -> Coeff:
    """<alpha c_k of the log-tangent bundle, X> with alpha a multiple of the
    complementary power of x.

    Computed along both routes (the alternating expansion of
    c(X)(1 + PD(V))^{-1} restricted term by term, and the difference of the
    X- and V-pairings) and asserted equal.
    """
    if V.divisor_multiple is None:
        raise InclusionUndeclared(f"{V.name} carries no divisor class in {X.name}")
    delta = V.divisor_multiple
    a = alpha_mult
    # route 1: <alpha c_k(X), X> - <alpha|_V c_{k-1}(V), V>
    direct = a * X.c(k) * X.degree_map - a * V.c(k - 1) * V.degree_map
    # route 2: alternating expansion, each correction term paired on V
    expansion = a * X.c(k) * X.degree_map
    for i in range(k):
        term = a * X.c(k - 1 - i) * (delta**i) * V.degree_map
        expansion = expansion - (Fraction(-1) ** i) * term
    if direct != expansion:
        raise InternalMismatch(
            f"log-tangent routes disagree on {X.name}/{V.name}, k={k}: "
            f"{direct} vs {expansion}"
        )
    return direct


def gw_genus1_deg0(X: ChernData, V: ChernData | None, insertion) -> Coeff:
    """Genus-1 degree-0 invariants: chi(X)/2 for the point-of-moduli
    insertion, -<alpha c_{n-1}(X)>/24 for a two-form alpha = a*x; relative
    versions subtract the V-term."""
    if insertion == "j":
        value = euler_char(X) * Fraction(1, 2)
        if V is not None:
            value = value - euler_char(V) * Fraction(1, 2)
        return value
    kind, a = insertion
    if kind != "alpha":
        raise ValueError(f"unknown insertion {insertion!r}")
    n = X.dim
    value = -Fraction(1, 24) * a * X.c(n - 1) * X.degree_map
    if V is not None:
        value = value + Fraction(1, 24) * a * V.c(n - 2) * V.degree_map
    return value


def genus1_consistency_j(X: ChernData, V: ChernData) -> tuple:
    """Both sides of the degeneration consistency for the j-insertion:
    chi(X)/2 against the relative invariant plus the bundle term chi(V)/2,
    using chi of the projectivized bundle = 2 chi(V)."""
    absolute = euler_char(X) * Fraction(1, 2)
    relative = gw_genus1_deg0(X, V, "j")
    chi_bundle = 2 * euler_char(V)  # chi of the P1-bundle over V
    bundle_term = (chi_bundle - euler_char(V)) * Fraction(1, 2)
    return absolute, relative + bundle_term


def genus1_consistency_alpha(X: ChernData, V: ChernData, a=1) -> tuple:
    """Both sides of the degeneration consistency for a two-form insertion;
    the bundle side uses <pullback(alpha|_V) c_{n-1} of the bundle> =
    2 <alpha|_V c_{n-2}(V), V>."""
    absolute = gw_genus1_deg0(X, None, ("alpha", a))
    relative = gw_genus1_deg0(X, V, ("alpha", a))
    pairing_V = a * V.c(V.dim - 1) * V.degree_map
    bundle_term = -Fraction(1, 24) * (2 * pairing_V - pairing_V)
    return absolute, relative + bundle_term


# ---------------------------------------------------------------------------
# the genus-3 Hodge contraction
# ---------------------------------------------------------------------------

def _lam(e1: int, e2: int, e3: int) -> Fraction:
    return hodge_intersect(HodgeMonomial(3, 0, (), (e1, e2, e3)))


def hodge_contraction_genus3(V: ChernData) -> Coeff:
    """<e(E3* x TV), unpointed genus-3 moduli x V> for a threefold V:
    lambda-ladder coefficients are c1c2 - 3c3, c3, and c1^3 - 3c1c2 + 3c3."""
    if V.dim != 3:
        raise ValueError("the genus-3 contraction needs a threefold")
    c1, c2, c3 = V.c(1), V.c(2), V.c(3)
    c1c2 = V.pair(_ser_mul([0, c1], [0, 0, c2], 3))
    c3top = V.pair([0, 0, 0, c3])
    c1cube = V.pair(_ser_mul(_ser_mul([0, c1], [0, c1], 3), [0, c1], 3))
    return (
        _lam(1, 1, 1) * (c1c2 - 3 * c3top)
        + _lam(0, 3, 0) * c3top
        + _lam(0, 0, 2) * (c1cube - 3 * c1c2 + 3 * c3top)
    )


def degree_correction_genus3(V: ChernData, multiplier=Fraction(4)) -> Coeff:
    """The genus-3 fiber-class relative degree: the Hodge contraction times
    the degree-4 push-forward factor; equals <c1c2 - c3, V>/362880."""
    return hodge_contraction_genus3(V) * multiplier


def c1c2_minus_c3(V: ChernData) -> Coeff:
    c1, c2, c3 = V.c(1), V.c(2), V.c(3)
    cls = _ser_mul([0, c1], [0, 0, c2], 3)
    cls[3] = cls[3] - c3
    return V.pair(cls)
