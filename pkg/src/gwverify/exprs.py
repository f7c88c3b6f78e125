"""Parser for the class-expression mini-grammar used by diagram files.

Grammar (whitespace-insensitive):

    expr    := term (('+' | '-') term)*
    term    := signed (('*' | '/') signed)*
    signed  := '-' signed | atom ('^' INT)?
    atom    := INT | ident | '(' expr ')'
              | 'hodgetwist' '(' INT ';' expr (',' expr)* ')'
    ident   := 'psi[f,i]' | 'lam[f,j]' | 'x[f]' | 'psiinf[f]' | 'a1' | 'a2'

Rationals are spelled as divisions of integers (for instance ``5/165888``);
division requires a scalar (degree-0, invertible) right-hand side.
``hodgetwist(g; w1, ...)`` attaches to the unique genus-g factor of the base.
"""

from __future__ import annotations

import re

from .errors import BaseMismatch, ParseError
from .ring import BaseSpace, TautClass, hodge_twist_by_genus
from .scalars import EquivariantScalar

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[\[\],;()+\-*/^]))"
)

EMPTY_BASE = BaseSpace(())


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad character {text[pos]!r} at position {pos}")
        if m.group("int"):
            out.append(("int", m.group("int"), m.start()))
        elif m.group("name"):
            out.append(("name", m.group("name"), m.start()))
        else:
            out.append(("op", m.group("op"), m.start()))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, base: BaseSpace):
        self.text = text
        self.base = base
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r} at position {pos} in {self.text!r}")

    def parse(self) -> TautClass:
        out = self.expr()
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {val!r} at position {pos} in {self.text!r}")
        return out

    def expr(self) -> TautClass:
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> TautClass:
        out = self.signed()
        while self.peek()[1] in ("*", "/"):
            op = self.next()[1]
            rhs = self.signed()
            if op == "*":
                out = out * rhs
            else:
                parts = rhs.degree_parts()
                if set(parts) - {0}:
                    raise ParseError(
                        f"division by a non-scalar class in {self.text!r}"
                    )
                scalar = rhs.scalar_part()
                if scalar.is_zero():
                    raise ParseError(f"division by zero in {self.text!r}")
                out = out.scale(scalar.inverse())
        return out

    def signed(self) -> TautClass:
        if self.peek()[1] == "-":
            self.next()
            return -self.signed()
        out = self.atom()
        if self.peek()[1] == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "int":
                raise ParseError(f"expected integer exponent at position {pos}")
            out = out**int(val)
        return out

    def atom(self) -> TautClass:
        kind, val, pos = self.next()
        if kind == "int":
            return TautClass.scalar(self.base, int(val))
        if val == "(":
            out = self.expr()
            self.expect(")")
            return out
        if kind != "name":
            raise ParseError(f"unexpected {val!r} at position {pos} in {self.text!r}")
        if val == "a1":
            return TautClass.scalar(self.base, EquivariantScalar.weight(1))
        if val == "a2":
            return TautClass.scalar(self.base, EquivariantScalar.weight(2))
        if val == "hodgetwist":
            self.expect("(")
            kind, gval, pos = self.next()
            if kind != "int":
                raise ParseError(f"expected genus at position {pos}")
            self.expect(";")
            weights = [self.expr()]
            while self.peek()[1] == ",":
                self.next()
                weights.append(self.expr())
            self.expect(")")
            return hodge_twist_by_genus(self.base, int(gval), weights)
        if val in ("psi", "lam", "x", "psiinf"):
            self.expect("[")
            idx = []
            kind, v, pos = self.next()
            if kind != "int":
                raise ParseError(f"expected factor index at position {pos}")
            idx.append(int(v))
            while self.peek()[1] == ",":
                self.next()
                kind, v, pos = self.next()
                if kind != "int":
                    raise ParseError(f"expected index at position {pos}")
                idx.append(int(v))
            self.expect("]")
            try:
                if val == "psi":
                    factor, point = idx
                    return TautClass.psi(self.base, factor, point)
                if val == "lam":
                    factor, j = idx
                    return TautClass.lam(self.base, factor, j)
                if val == "x":
                    (factor,) = idx
                    return TautClass.x(self.base, factor)
                (factor,) = idx
                return TautClass.psiinf(self.base, factor)
            except BaseMismatch:
                raise
            except (ValueError, IndexError) as exc:
                raise ParseError(f"bad indices for {val} in {self.text!r}: {exc}") from exc
        raise ParseError(f"unknown identifier {val!r} at position {pos}")


def parse_class(text: str, base: BaseSpace) -> TautClass:
    """Parse an expression into a tautological class over the given base."""
    return _Parser(text, base).parse()


def parse_scalar(text: str) -> EquivariantScalar:
    """Parse a pure weight-scalar expression (no generators allowed)."""
    cls = _Parser(text, EMPTY_BASE).parse()
    return cls.scalar_part()
