"""Pure psi-class intersection numbers <psi_1^a1 ... psi_n^an> on the moduli
space of stable curves, by recursion on the largest exponent.

The recursion used is the Virasoro/KdV one (Dijkgraaf-Verlinde-Verlinde
form), seeded with <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24.  It exists here as
an independent oracle: any correct pure-psi recursion is acceptable, and the
string/dilaton reductions double-check every memoized value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NoUnitExponent,
    NoZeroExponent,
    ResourceBound,
    UnstableInput,
    UnstableReduction,
)

MAX_GENUS = 6
MAX_POINTS = 12


@dataclass(frozen=True)
class PsiKey:
    """A genus together with a sorted multiset of psi exponents."""

    genus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(sorted(self.exponents, reverse=True)))
        if self.genus < 0 or any(a < 0 for a in self.exponents):
            raise ValueError("genus and exponents must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def dim(self) -> int:
        return 3 * self.genus - 3 + self.n

    def is_stable(self) -> bool:
        return 2 * self.genus - 2 + self.n > 0


def _check_bounds(key: PsiKey) -> None:
    if key.n < 1 or not key.is_stable():
        raise UnstableInput(f"(g, n) = ({key.genus}, {key.n}) is unstable")
    if key.genus > MAX_GENUS or key.n > MAX_POINTS:
        raise ResourceBound(
            f"inputs above g = {MAX_GENUS} or n = {MAX_POINTS} are rejected"
        )


def _dfact(k: int) -> int:
    """(2k+1)!! for k >= -1; the k = -1 value is 1."""
    out = 1
    for i in range(3, 2 * k + 2, 2):
        out *= i
    return out


def _value(g: int, exps: tuple[int, ...]) -> Fraction:
    """Unchecked evaluation with the unstable-equals-zero convention."""
    n = len(exps)
    if g < 0 or n < 1 or 2 * g - 2 + n <= 0:
        return Fraction(0)
    if sum(exps) != 3 * g - 3 + n:
        return Fraction(0)
    return _recurse(g, tuple(sorted(exps, reverse=True)))


# values are deterministic, so unsynchronized concurrent writes are benign
_MEMO: dict[tuple[int, tuple[int, ...]], Fraction] = {}


def _recurse(g: int, exps: tuple[int, ...]) -> Fraction:
    cached = _MEMO.get((g, exps))
    if cached is not None:
        return cached
    value = _recurse_uncached(g, exps)
    _MEMO[(g, exps)] = value
    return value


def _recurse_uncached(g: int, exps: tuple[int, ...]) -> Fraction:
    if g == 0 and exps == (0, 0, 0):
        return Fraction(1)
    if g == 1 and exps == (1,):
        return Fraction(1, 24)
    a1, rest = exps[0], exps[1:]
    if a1 == 0:
        # all exponents zero: only (0, (0,0,0)) has matching dimension
        return Fraction(0)
    total = Fraction(0)
    # junction with another marked point
    for j, aj in enumerate(rest):
        new = rest[:j] + (a1 + aj - 1,) + rest[j + 1 :]
        total += Fraction(_dfact(a1 + aj - 1), _dfact(aj - 1)) * _value(g, new)
    # boundary terms
    half = Fraction(0)
    for b in range(a1 - 1):
        c = a1 - 2 - b
        w = Fraction(_dfact(b) * _dfact(c))
        # non-separating node
        half += w * _value(g - 1, (b, c) + rest)
        # separating node: split genus and the remaining points
        for g1 in range(g + 1):
            g2 = g - g1
            for mask in range(1 << len(rest)):
                s1 = tuple(rest[i] for i in range(len(rest)) if mask >> i & 1)
                s2 = tuple(rest[i] for i in range(len(rest)) if not mask >> i & 1)
                half += w * _value(g1, (b,) + s1) * _value(g2, (c,) + s2)
    total += half / 2
    return total / _dfact(a1)


def psi_intersect(key: PsiKey) -> Fraction:
    """Exact <psi^a> intersection number; 0 when the dimension balance fails."""
    _check_bounds(key)
    if sum(key.exponents) != key.dim:
        return Fraction(0)
    return _recurse(key.genus, key.exponents)


def string_reduce(key: PsiKey) -> list[PsiKey]:
    """String equation: remove a psi-exponent-0 point, lowering one exponent.

    <tau_0 prod tau_{a_j}> = sum_j <tau_{a_j - 1} prod_{l != j} tau_{a_l}>;
    terms with a_j = 0 drop out.
    """
    _check_bounds(key)
    if 0 not in key.exponents:
        raise NoZeroExponent(f"{key} has no psi-free marked point")
    rest = list(key.exponents)
    rest.remove(0)
    if not (2 * key.genus - 2 + len(rest) > 0):
        raise UnstableReduction(f"removing a point from {key} is unstable")
    out = []
    for j, aj in enumerate(rest):
        if aj >= 1:
            out.append(PsiKey(key.genus, tuple(rest[:j] + [aj - 1] + rest[j + 1 :])))
    return out


def dilaton_reduce(key: PsiKey) -> tuple[int, PsiKey]:
    """Dilaton equation: strip a psi-exponent-1 point and scale by 2g - 2 + n.

    Returns (factor, reduced key) with factor = 2g - 2 + (n - 1).
    """
    _check_bounds(key)
    if 1 not in key.exponents:
        raise NoUnitExponent(f"{key} has no psi-exponent-1 marked point")
    rest = list(key.exponents)
    rest.remove(1)
    if not (2 * key.genus - 2 + len(rest) > 0):
        raise UnstableReduction(f"removing a point from {key} is unstable")
    return 2 * key.genus - 2 + len(rest), PsiKey(key.genus, tuple(rest))


def memoized_keys() -> list[PsiKey]:
    """Keys evaluated so far, for the string/dilaton closure property tests."""
    return [PsiKey(g, exps) for (g, exps) in sorted(_MEMO)]
