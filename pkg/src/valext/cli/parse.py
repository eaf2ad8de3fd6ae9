"""Polynomial text parser and canonical printer.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "x" | "t" | "(" expr ")"

``t`` is only available over F_p(t).  Division is allowed by nonzero
constants, so coefficients may be rationals (over Q) or rational functions
in ``t`` (over F_p(t)).
"""
from __future__ import annotations

from ..arith import Poly, format_poly
from ..basefield import BaseValuation
from ..errors import ParseError


class _Parser:
    def __init__(self, text: str, base: BaseValuation):
        self.text = text
        self.pos = 0
        self.base = base
        self.field = base.field

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _error(self, msg, pos=None):
        raise ParseError(msg, self.pos if pos is None else pos)

    def parse(self) -> Poly:
        if not self.text.strip():
            self._error("empty polynomial")
        out = self.expr()
        if self._peek():
            self._error(f"unexpected {self.text[self.pos]!r}")
        return out

    def expr(self) -> Poly:
        acc = self.term()
        while self._peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while self._peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            at = self.pos
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
                continue
            if rhs.degree != 0:
                self._error("division by a non-constant or zero", at)
            acc = acc * (self.field.one / rhs.coeffs[0])
        return acc

    def unary(self) -> Poly:
        c = self._peek()
        if c in ("+", "-"):
            self.pos += 1
            inner = self.unary()
            return -inner if c == "-" else inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self._error("expected a non-negative integer exponent", start)
            base = base ** int(self.text[start:self.pos])
        return base

    def atom(self) -> Poly:
        c = self._peek()
        F = self.field
        if c.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Poly.constant(F, F(int(self.text[start:self.pos])))
        if c == "x":
            self.pos += 1
            return Poly(F, [0, 1])
        if c == "t":
            if self.base.kind != "fpt":
                self._error("variable t is only available over F_p(t)")
            self.pos += 1
            return Poly.constant(F, F.t)
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self._peek() != ")":
                self._error("expected ')'")
            self.pos += 1
            return inner
        if not c:
            self._error("unexpected end of input")
        self._error(f"unexpected {c!r}")


def parse_poly(text: str, base: BaseValuation) -> Poly:
    """Parse ``text`` into a polynomial in ``x`` over the base field."""
    return _Parser(text, base).parse()


def print_poly(poly: Poly) -> str:
    """Canonical text form; ``parse_poly(print_poly(f)) == f``."""
    return format_poly(poly)
