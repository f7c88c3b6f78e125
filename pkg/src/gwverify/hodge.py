"""Mixed psi/lambda intersection numbers for genus <= 3, and the table-backed
oracle for the degree-1 rubber integrals.

Evaluation pipeline: dimension gate, then marked-point stripping (string for
exponent 0, dilaton for exponent 1), then the Mumford relations, then either
the pure-psi recursion or a table lookup.  A residual monomial that is not in
the shipped tables raises :class:`UnknownMonomial`; values are never invented.

Relations used (all exact consequences of c(E)c(E*) = 1 plus the vanishing
of the top Hodge class squared):
  genus 1:  lambda^2 = 0
  genus 2:  lambda_1^2 = 2 lambda_2,  lambda_2^2 = 0
  genus 3:  lambda_1^2 = 2 lambda_2,  lambda_2^2 = 2 lambda_1 lambda_3,
            lambda_3^2 = 0
On rubber factors the same ideal is applied in the lambda_1-elimination
direction, so residuals land on the keys the rubber table actually has.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._data import load_json
from .errors import (
    GenusOutOfRange,
    SchemaError,
    UnknownMonomial,
    UnknownRubberKey,
    UnstableInput,
)
from .psi import PsiKey, psi_intersect
from .scalars import EquivariantScalar, rat_from_str

LamTuple = tuple[int, ...]
LamTerm = tuple[Fraction, LamTuple]


@dataclass(frozen=True)
class HodgeMonomial:
    """psi_1^{a_1}...psi_n^{a_n} lambda_1^{e_1}...lambda_g^{e_g} on DM(g, n)."""

    g: int
    n: int
    psi: tuple[int, ...]
    lam: tuple[int, ...]

    def __post_init__(self):
        if len(self.psi) != self.n or len(self.lam) != self.g:
            raise ValueError("exponent vectors must match (g, n)")
        if any(a < 0 for a in self.psi) or any(e < 0 for e in self.lam):
            raise ValueError("exponents must be nonnegative")
        if 2 * self.g - 2 + self.n <= 0:
            raise UnstableInput(f"(g, n) = ({self.g}, {self.n}) is unstable")

    @property
    def dim(self) -> int:
        return 3 * self.g - 3 + self.n

    @property
    def degree(self) -> int:
        return sum(self.psi) + sum((i + 1) * e for i, e in enumerate(self.lam))


@dataclass(frozen=True)
class RubberKey:
    """A monomial in the target psi-class and lambda-classes on a degree-1
    rubber space with the ((1),(1)) contact pattern."""

    g: int
    psi: int
    lam: tuple[int, ...]
    n: int = 0  # extra marked points; only used in genus 0

    def __post_init__(self):
        if self.g not in (0, 1, 2, 3):
            raise GenusOutOfRange(f"rubber genus {self.g} not supported")
        if len(self.lam) != self.g:
            raise ValueError("lambda exponent vector must have length g")

    @property
    def dim(self) -> int:
        return self.n - 1 if self.g == 0 else 2 * self.g - 1

    @property
    def degree(self) -> int:
        return self.psi + sum((i + 1) * e for i, e in enumerate(self.lam))


# ---------------------------------------------------------------------------
# relation rewriting
# ---------------------------------------------------------------------------

def rewrite_lambda(g: int, lam: LamTuple) -> list[LamTerm]:
    """Normal form of a lambda-monomial under the Mumford relations.

    Returns a single-term list [(coeff, tuple)] or [] when the monomial
    rewrites to zero.  Genus 0 monomials are already normal.
    """
    if g > 3 or g < 0:
        raise GenusOutOfRange(f"relations implemented for genus <= 3, got {g}")
    coeff = Fraction(1)
    lam = tuple(lam)
    while True:
        if g == 1 and lam[0] >= 2:
            return []
        if g == 2:
            e1, e2 = lam
            if e1 >= 2:
                coeff *= 2
                lam = (e1 - 2, e2 + 1)
                continue
            if e2 >= 2:
                return []
        if g == 3:
            e1, e2, e3 = lam
            if e1 >= 2:
                coeff *= 2
                lam = (e1 - 2, e2 + 1, e3)
                continue
            if e2 >= 2:
                coeff *= 2
                lam = (e1 + 1, e2 - 2, e3 + 1)
                continue
            if e3 >= 2:
                return []
        return [(coeff, lam)]


def rewrite_lambda_rubber(g: int, lam: LamTuple) -> list[LamTerm]:
    """Rubber-side normal form: eliminate toward lambda_1 powers.

    genus 2: lambda_2 -> lambda_1^2/2; genus 3 additionally
    lambda_1 lambda_3 -> lambda_1^4/8 and lambda_3^2 -> 0.
    """
    if g > 3 or g < 0:
        raise GenusOutOfRange(f"relations implemented for genus <= 3, got {g}")
    coeff = Fraction(1)
    lam = tuple(lam)
    if g == 0:
        return [(coeff, lam)]
    if g == 1:
        return [] if lam[0] >= 2 else [(coeff, lam)]
    if g == 2:
        e1, e2 = lam
        if e2:
            coeff *= Fraction(1, 2) ** e2
            e1, e2 = e1 + 2 * e2, 0
        return [(coeff, (e1, e2))]
    e1, e2, e3 = lam
    if e2:
        coeff *= Fraction(1, 2) ** e2
        e1, e2 = e1 + 2 * e2, 0
    if e3 >= 2:
        return []
    if e3 == 1 and e1 >= 1:
        coeff *= Fraction(1, 8)
        e1, e3 = e1 + 3, 0
    return [(coeff, (e1, e2, e3))]


def relation_rewrite(m: HodgeMonomial) -> list[tuple[Fraction, HodgeMonomial]]:
    """Rewrite the lambda-part of a monomial to normal form."""
    return [
        (c, HodgeMonomial(m.g, m.n, m.psi, lt))
        for c, lt in rewrite_lambda(m.g, m.lam)
    ]


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

_TABLES: dict | None = None


def _load_tables() -> dict:
    global _TABLES
    if _TABLES is not None:
        return _TABLES
    payload, where = load_json("tables", "dm_intersections.json")
    table: dict[tuple, Fraction] = {}
    for i, entry in enumerate(payload.get("entries", [])):
        loc = f"{where}: entries[{i}]"
        try:
            g, n = int(entry["g"]), int(entry["n"])
            psi = tuple(sorted((int(a) for a in entry["psi"]), reverse=True))
            lam = tuple(int(e) for e in entry["lambda"])
            value = rat_from_str(entry["value"])
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{loc}: {exc}") from exc
        if len(psi) != n or len(lam) != g:
            raise SchemaError(f"{loc}: exponent vectors do not match (g, n)")
        table[(g, n, psi, lam)] = value

    rpayload, rwhere = load_json("tables", "rubber.json")
    rubber: dict[tuple, Fraction] = {}
    for i, entry in enumerate(rpayload.get("entries", [])):
        loc = f"{rwhere}: entries[{i}]"
        try:
            g = int(entry["g"])
            n = int(entry.get("n", 0))
            psi = int(entry["psi"])
            lam = tuple(int(e) for e in entry["lambda"])
            value = rat_from_str(entry["value"])
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{loc}: {exc}") from exc
        rubber[(g, n, psi, lam)] = value
    _TABLES = {"dm": table, "rubber": rubber}
    return _TABLES


def reset_tables() -> None:
    """Drop cached tables (used after changing GWVERIFY_DATA_DIR)."""
    global _TABLES
    _TABLES = None
    _HODGE_MEMO.clear()


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

# values are deterministic, so unsynchronized concurrent writes are benign
_HODGE_MEMO: dict[tuple, Fraction] = {}


def hodge_intersect(m: HodgeMonomial) -> Fraction:
    """Exact value of a mixed psi/lambda monomial against DM(g, n), g <= 3."""
    if m.g > 3:
        raise GenusOutOfRange(f"hodge oracle covers genus <= 3, got {m.g}")
    if m.degree != m.dim:
        return Fraction(0)
    return _eval(m.g, tuple(sorted(m.psi, reverse=True)), m.lam)


def _eval(g: int, psi: tuple[int, ...], lam: LamTuple) -> Fraction:
    key = (g, psi, lam)
    cached = _HODGE_MEMO.get(key)
    if cached is not None:
        return cached
    value = _eval_uncached(g, psi, lam)
    _HODGE_MEMO[key] = value
    return value


def _eval_uncached(g: int, psi: tuple[int, ...], lam: LamTuple) -> Fraction:
    n = len(psi)
    if not any(lam):
        return psi_intersect(PsiKey(g, psi))
    # strip marked points while the reduction stays stable
    if 2 * g - 2 + (n - 1) > 0:
        if psi and psi[-1] == 0:  # string: exponents sorted descending
            rest = psi[:-1]
            total = Fraction(0)
            for j, aj in enumerate(rest):
                if aj >= 1:
                    reduced = tuple(
                        sorted(rest[:j] + (aj - 1,) + rest[j + 1 :], reverse=True)
                    )
                    total += _eval(g, reduced, lam)
            return total
        if psi and psi[-1] == 1:  # dilaton
            return (2 * g - 2 + n - 1) * _eval(g, psi[:-1], lam)
    table = _load_tables()["dm"]
    total = Fraction(0)
    for coeff, lt in rewrite_lambda(g, lam):
        if not any(lt):
            total += coeff * psi_intersect(PsiKey(g, psi))
            continue
        val = table.get((g, n, psi, lt))
        if val is None:
            raise UnknownMonomial(
                f"no table entry for g={g}, n={n}, psi={list(psi)}, lambda={list(lt)}"
            )
        total += coeff * val
    return total


def rubber_intersect(key: RubberKey) -> Fraction:
    """Table-backed rubber integral; unknown top-degree keys are an error."""
    tables = _load_tables()["rubber"]
    if key.g == 0 and key.n < 3:
        raise UnknownRubberKey(f"genus-0 rubber needs n >= 3, got n={key.n}")
    if key.degree != key.dim:
        return Fraction(0)
    if key.g >= 1 and key.psi >= key.g:
        return Fraction(0)  # psi^g annihilates the genus-g rubber class
    total = Fraction(0)
    for coeff, lt in rewrite_lambda_rubber(key.g, key.lam):
        val = tables.get((key.g, key.n, key.psi, lt))
        if val is None:
            raise UnknownRubberKey(
                f"no rubber entry for g={key.g}, n={key.n}, psi={key.psi}, "
                f"lambda={list(lt)}"
            )
        total += coeff * val
    return total


# ---------------------------------------------------------------------------
# Mumford product collapse
# ---------------------------------------------------------------------------

def _lam_poly_mul(
    a: dict[LamTuple, EquivariantScalar], b: dict[LamTuple, EquivariantScalar]
) -> dict[LamTuple, EquivariantScalar]:
    out: dict[LamTuple, EquivariantScalar] = {}
    for la, ca in a.items():
        for lb, cb in b.items():
            key = tuple(x + y for x, y in zip(la, lb))
            c = ca * cb
            if key in out:
                c = out[key] + c
            if c.is_zero():
                out.pop(key, None)
            else:
                out[key] = c
    return out


def _twist_sides(g: int, w: EquivariantScalar):
    """The two rank-g twist polynomials written lambda-leading, i.e.
    (lam_g - w lam_{g-1} + ... +- w^g) and (lam_g + w lam_{g-1} + ... + w^g),
    as lambda-polynomials over scalars."""
    minus: dict[LamTuple, EquivariantScalar] = {}
    plus: dict[LamTuple, EquivariantScalar] = {}
    for i in range(g + 1):
        lt = tuple(1 if j == i - 1 else 0 for j in range(g))
        wp = w ** (g - i)
        minus[lt] = wp.scale(Fraction(-1) ** (g - i))
        plus[lt] = wp
    return minus, plus


def mumford_product_check(g: int, w: EquivariantScalar) -> bool:
    """True iff the two rank-g twists multiply to (-1)^g w^(2g) after the
    relations: + for the genus-2 collapse, - for the genus-3 one."""
    if g not in (1, 2, 3):
        raise GenusOutOfRange(f"mumford product check needs genus 1..3, got {g}")
    minus, plus = _twist_sides(g, w)
    product = _lam_poly_mul(minus, plus)
    reduced: dict[LamTuple, EquivariantScalar] = {}
    for lt, c in product.items():
        for coeff, nf in rewrite_lambda(g, lt):
            acc = c.scale(coeff)
            if nf in reduced:
                acc = reduced[nf] + acc
            if acc.is_zero():
                reduced.pop(nf, None)
            else:
                reduced[nf] = acc
    expected = (w ** (2 * g)).scale(Fraction(-1) ** g)
    zero = tuple(0 for _ in range(g))
    return set(reduced) == {zero} and reduced[zero] == expected
