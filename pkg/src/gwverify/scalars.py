"""Exact scalar tower: rationals, polynomials in the two torus weights a1, a2,
and canonical ratios of such polynomials.

Every number in the package is built from these types; no floating point is
used anywhere.  A :class:`WeightPoly` is a sparse polynomial with
``Fraction`` coefficients keyed on exponent pairs ``(e1, e2)``; an
:class:`EquivariantScalar` is a reduced fraction ``num/den`` of two such
polynomials, normalized so that ``gcd(num, den) = 1``, the denominator has
coprime integer coefficients, and its graded-lex leading coefficient is
positive.  Canonical form makes equality syntactic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Optional

from .errors import DenominatorVanishes, DivisionByZero

Rational = Fraction

Exponent = tuple[int, int]


def rat_to_str(r: Rational) -> str:
    """Serialize a rational as ``p/q``, or ``p`` when the denominator is 1."""
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def rat_from_str(s: str) -> Rational:
    return Fraction(s.strip())


def _mono_key(e: Exponent) -> tuple[int, int]:
    # graded-lex order with a1 > a2
    return (e[0] + e[1], e[0])


# ---------------------------------------------------------------------------
# univariate helpers over Fraction (dense lists, lowest degree first)
# ---------------------------------------------------------------------------

def _utrim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _uadd(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return _utrim(out)


def _uneg(p: list[Fraction]) -> list[Fraction]:
    return [-c for c in p]


def _umul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _utrim(out)


def _uscale(p: list[Fraction], c: Fraction) -> list[Fraction]:
    return [] if c == 0 else _utrim([a * c for a in p])


def _udivmod(p: list[Fraction], q: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    if not q:
        raise DivisionByZero("univariate division by zero polynomial")
    rem = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    inv = 1 / q[-1]
    while len(rem) >= len(q):
        c = rem[-1] * inv
        d = len(rem) - len(q)
        quo[d] = c
        for i, b in enumerate(q):
            rem[i + d] -= c * b
        _utrim(rem)
    return _utrim(quo), rem


def _unormalize(p: list[Fraction]) -> list[Fraction]:
    """Scale to coprime integer coefficients with a positive leading one."""
    if not p:
        return p
    num = 0
    den = 1
    for c in p:
        num = _int_gcd(num, c.numerator)
        den = den * c.denominator // _int_gcd(den, c.denominator)
    scale = Fraction(den, num)
    if p[-1] < 0:
        scale = -scale
    return _uscale(p, scale)


def _ugcd(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    a, b = list(p), list(q)
    while b:
        a, b = b, _udivmod(a, b)[1]
    return _unormalize(a)


# ---------------------------------------------------------------------------
# WeightPoly
# ---------------------------------------------------------------------------

class WeightPoly:
    """Sparse exact polynomial in the weight symbols a1, a2.

    Zero coefficients are never stored; instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, Fraction] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    if e[0] < 0 or e[1] < 0:
                        raise ValueError(f"negative exponent {e}")
                    clean[(int(e[0]), int(e[1]))] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "WeightPoly":
        return cls()

    @classmethod
    def const(cls, c: Rational | int) -> "WeightPoly":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def gen(cls, i: int) -> "WeightPoly":
        if i not in (1, 2):
            raise ValueError("weight symbols are a1 and a2")
        return cls({(1, 0) if i == 1 else (0, 1): Fraction(1)})

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def as_const(self) -> Optional[Fraction]:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and (0, 0) in self.terms:
            return self.terms[(0, 0)]
        return None

    def total_degree(self) -> int:
        return max((e[0] + e[1] for e in self.terms), default=0)

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms, key=_mono_key)
        return e, self.terms[e]

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "WeightPoly") -> "WeightPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = WeightPoly.__new__(WeightPoly)
        res.terms = out
        return res

    def __neg__(self) -> "WeightPoly":
        res = WeightPoly.__new__(WeightPoly)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "WeightPoly") -> "WeightPoly":
        return self + (-other)

    def __mul__(self, other: "WeightPoly") -> "WeightPoly":
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1])
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = WeightPoly.__new__(WeightPoly)
        res.terms = out
        return res

    def scale(self, c: Rational) -> "WeightPoly":
        c = Fraction(c)
        if c == 0:
            return WeightPoly.zero()
        res = WeightPoly.__new__(WeightPoly)
        res.terms = {e: k * c for e, k in self.terms.items()}
        return res

    def __pow__(self, n: int) -> "WeightPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = WeightPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift(self, d1: int, d2: int) -> "WeightPoly":
        res = WeightPoly.__new__(WeightPoly)
        res.terms = {(e[0] + d1, e[1] + d2): c for e, c in self.terms.items()}
        return res

    def eval_at(self, w1: Rational, w2: Rational) -> Fraction:
        w1, w2 = Fraction(w1), Fraction(w2)
        total = Fraction(0)
        for (e1, e2), c in self.terms.items():
            total += c * w1**e1 * w2**e2
        return total

    def swap_weights(self) -> "WeightPoly":
        res = WeightPoly.__new__(WeightPoly)
        res.terms = {(e2, e1): c for (e1, e2), c in self.terms.items()}
        return res

    # -- comparison / output --------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeightPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e in sorted(self.terms, key=_mono_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (f"{name}^{k}" if k > 1 else name)
                for name, k in (("a1", e[0]), ("a2", e[1]))
                if k > 0
            )
            if not mono:
                body = rat_to_str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{rat_to_str(abs(c))}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {body}")
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else out[0] + out[2:]

    def __repr__(self) -> str:
        return f"WeightPoly({self})"


# ---------------------------------------------------------------------------
# polynomial gcd (primitive PRS, a1 as the main variable)
# ---------------------------------------------------------------------------

def _mono_content(p: WeightPoly) -> Exponent:
    return (min(e[0] for e in p.terms), min(e[1] for e in p.terms))


def _rational_content(p: WeightPoly) -> Fraction:
    """c with p/c primitive-integer and positive graded-lex lead; 1 for 0."""
    if p.is_zero():
        return Fraction(1)
    num = 0
    den = 1
    for c in p.terms.values():
        num = _int_gcd(num, c.numerator)
        den = den * c.denominator // _int_gcd(den, c.denominator)
    c = Fraction(num, den)
    return -c if p.leading()[1] < 0 else c


def _to_rec(p: WeightPoly) -> dict[int, list[Fraction]]:
    """View in a1: maps a1-degree -> univariate polynomial in a2."""
    rec: dict[int, list[Fraction]] = {}
    for (e1, e2), c in p.terms.items():
        row = rec.setdefault(e1, [])
        while len(row) <= e2:
            row.append(Fraction(0))
        row[e2] = c
    return {d: _utrim(row) for d, row in rec.items() if _utrim(list(row))}


def _from_rec(rec: Mapping[int, list[Fraction]]) -> WeightPoly:
    terms: dict[Exponent, Fraction] = {}
    for d, row in rec.items():
        for e2, c in enumerate(row):
            if c:
                terms[(d, e2)] = c
    return WeightPoly(terms)


def _rec_content(rec: Mapping[int, list[Fraction]]) -> list[Fraction]:
    g: list[Fraction] = []
    for row in rec.values():
        g = _ugcd(g, row)
    return g


def _rec_div_coeffs(rec: Mapping[int, list[Fraction]], d: list[Fraction]) -> dict[int, list[Fraction]]:
    out: dict[int, list[Fraction]] = {}
    for k, row in rec.items():
        q, r = _udivmod(row, d)
        if r:
            raise ArithmeticError("inexact coefficient division in gcd")
        out[k] = q
    return out


def _rec_prem(a: dict[int, list[Fraction]], b: dict[int, list[Fraction]]) -> dict[int, list[Fraction]]:
    """Pseudo-remainder of a by b in (Q[a2])[a1]."""
    da, db = max(a), max(b)
    lb = b[db]
    rem = {k: list(v) for k, v in a.items()}
    while rem and max(rem) >= db:
        dr = max(rem)
        lr = rem[dr]
        # rem = lb*rem - lr*x^(dr-db)*b
        new: dict[int, list[Fraction]] = {}
        for k, row in rem.items():
            if k == dr:
                continue
            new[k] = _umul(row, lb)
        for k, row in b.items():
            if k == db:
                continue
            t = k + dr - db
            new[t] = _uadd(new.get(t, []), _uneg(_umul(row, lr)))
        rem = {k: v for k, v in new.items() if v}
    return rem


def poly_gcd(p: WeightPoly, q: WeightPoly) -> WeightPoly:
    """Gcd over Q[a1, a2], normalized primitive-integer with positive lead."""
    if p.is_zero():
        return _normalize_poly(q)
    if q.is_zero():
        return _normalize_poly(p)
    mp, mq = _mono_content(p), _mono_content(q)
    common = (min(mp[0], mq[0]), min(mp[1], mq[1]))
    ps = p.shift(-mp[0], -mp[1])
    qs = q.shift(-mq[0], -mq[1])
    g = _primitive_gcd(ps, qs).shift(*common)
    return _normalize_poly(g)


def _primitive_gcd(p: WeightPoly, q: WeightPoly) -> WeightPoly:
    if p.as_const() is not None or q.as_const() is not None:
        return WeightPoly.const(1)
    rp, rq = _to_rec(p), _to_rec(q)
    dp, dq = max(rp), max(rq)
    if dp == 0 and dq == 0:
        return _from_rec({0: _ugcd(rp[0], rq[0])})
    if dp == 0:
        return _from_rec({0: _ugcd(rp[0], _rec_content(rq))})
    if dq == 0:
        return _from_rec({0: _ugcd(rq[0], _rec_content(rp))})
    cont_p, cont_q = _rec_content(rp), _rec_content(rq)
    gcont = _ugcd(cont_p, cont_q)
    a = _rec_div_coeffs(rp, cont_p)
    b = _rec_div_coeffs(rq, cont_q)
    if max(a) < max(b):
        a, b = b, a
    while True:
        r = _rec_prem(a, b)
        if not r:
            g1 = _rec_div_coeffs(b, _rec_content(b))
            break
        if max(r) == 0:
            g1 = {0: [Fraction(1)]}
            break
        a, b = b, _rec_div_coeffs(r, _rec_content(r))
    gp = _from_rec(g1)
    if gcont != [Fraction(1)]:
        gp = gp * _from_rec({0: gcont})
    return gp


def _normalize_poly(p: WeightPoly) -> WeightPoly:
    if p.is_zero():
        return p
    return p.scale(1 / _rational_content(p))


def poly_divexact(p: WeightPoly, g: WeightPoly) -> WeightPoly:
    """Exact division p/g; raises if g does not divide p."""
    if g.is_zero():
        raise DivisionByZero("division by zero polynomial")
    gc = g.as_const()
    if gc is not None:
        return p.scale(1 / gc)
    quo: dict[Exponent, Fraction] = {}
    rem = p
    ge, gcf = g.leading()
    while not rem.is_zero():
        re, rcf = rem.leading()
        d = (re[0] - ge[0], re[1] - ge[1])
        if d[0] < 0 or d[1] < 0:
            raise ArithmeticError("inexact polynomial division")
        c = rcf / gcf
        quo[d] = quo.get(d, Fraction(0)) + c
        rem = rem - g.shift(*d).scale(c)
    return WeightPoly(quo)


# ---------------------------------------------------------------------------
# EquivariantScalar
# ---------------------------------------------------------------------------

_ONE_POLY = WeightPoly.const(1)


class EquivariantScalar:
    """Canonical ratio of two weight polynomials.

    Invariants: the denominator is nonzero, ``gcd(num, den) = 1``, and the
    denominator has coprime integer coefficients with positive graded-lex
    leading coefficient.  Zero is stored as ``0/1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: WeightPoly, den: WeightPoly | None = None):
        if den is None:
            den = _ONE_POLY
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            self.num, self.den = WeightPoly.zero(), _ONE_POLY
            return
        dc = den.as_const()
        if dc is not None:
            self.num, self.den = num.scale(1 / dc), _ONE_POLY
            return
        g = poly_gcd(num, den)
        if g.as_const() != Fraction(1):
            num = poly_divexact(num, g)
            den = poly_divexact(den, g)
        c = _rational_content(den)
        if c != 1:
            num = num.scale(1 / c)
            den = den.scale(1 / c)
        self.num, self.den = num, den

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_rational(cls, c: Rational | int) -> "EquivariantScalar":
        return cls(WeightPoly.const(Fraction(c)))

    @classmethod
    def from_poly(cls, p: WeightPoly) -> "EquivariantScalar":
        return cls(p)

    @classmethod
    def weight(cls, i: int) -> "EquivariantScalar":
        return cls(WeightPoly.gen(i))

    # -- predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> Optional[Fraction]:
        """The constant value, or None when weight symbols survive."""
        nc = self.num.as_const()
        dc = self.den.as_const()
        if nc is None or dc is None:
            return None
        return nc / dc

    # -- arithmetic ---------------------------------------------------------------
    def __add__(self, other: "EquivariantScalar") -> "EquivariantScalar":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return EquivariantScalar(self.num + other.num, self.den)
        return EquivariantScalar(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "EquivariantScalar":
        res = EquivariantScalar.__new__(EquivariantScalar)
        res.num, res.den = -self.num, self.den
        return res

    def __sub__(self, other: "EquivariantScalar") -> "EquivariantScalar":
        return self + (-other)

    def __mul__(self, other: "EquivariantScalar") -> "EquivariantScalar":
        if self.is_zero() or other.is_zero():
            return ES_ZERO
        return EquivariantScalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "EquivariantScalar") -> "EquivariantScalar":
        if other.is_zero():
            raise DivisionByZero("division by the zero scalar")
        if self.is_zero():
            return ES_ZERO
        return EquivariantScalar(self.num * other.den, self.den * other.num)

    def inverse(self) -> "EquivariantScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero scalar")
        return EquivariantScalar(self.den, self.num)

    def __pow__(self, n: int) -> "EquivariantScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ES_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def scale(self, c: Rational) -> "EquivariantScalar":
        if c == 0:
            return ES_ZERO
        res = EquivariantScalar.__new__(EquivariantScalar)
        res.num, res.den = self.num.scale(Fraction(c)), self.den
        return res

    def eval_at(self, weights: Iterable[Rational]) -> Fraction:
        w1, w2 = [Fraction(w) for w in weights]
        d = self.den.eval_at(w1, w2)
        if d == 0:
            raise DenominatorVanishes(f"denominator vanishes at ({w1}, {w2})")
        return self.num.eval_at(w1, w2) / d

    def swap_weights(self) -> "EquivariantScalar":
        return EquivariantScalar(self.num.swap_weights(), self.den.swap_weights())

    # -- comparison / output ---------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() == Fraction(other)
        return (
            isinstance(other, EquivariantScalar)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"EquivariantScalar({self})"


ES_ZERO = EquivariantScalar.from_rational(0)
ES_ONE = EquivariantScalar.from_rational(1)


# Spec-facing helpers -------------------------------------------------------

def es_arith(a: EquivariantScalar, b: EquivariantScalar, op: str) -> EquivariantScalar:
    """Exact field arithmetic; op is one of add/sub/mul/div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def es_is_constant(a: EquivariantScalar) -> Optional[Fraction]:
    return a.is_constant()


def es_eval(a: EquivariantScalar, weights: Iterable[Rational]) -> Fraction:
    return a.eval_at(weights)
