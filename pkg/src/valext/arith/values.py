"""Exact values in Q and the infinity sentinel.

Finite values are plain :class:`fractions.Fraction` objects.  ``INF`` is a
singleton that compares greater than every rational and absorbs addition,
so ``min``, ``max``, ``+`` and the comparison operators work on mixed
collections without special casing.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Fraction


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("valext.INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        if isinstance(other, (int, Fraction, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        # only non-negative scalings occur (j * beta with j >= 0)
        if isinstance(other, (int, Fraction)):
            if other < 0:
                raise ValueError("negative multiple of infinity")
            return Fraction(0) if other == 0 else self
        return NotImplemented

    __rmul__ = __mul__


INF = _Infinity()

Value = Union[Fraction, _Infinity]


def is_inf(v) -> bool:
    return v is INF


def as_value(x) -> Value:
    """Coerce an int, Fraction, ``"inf"`` or ``"a/b"`` string to a Value."""
    if x is INF:
        return INF
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "infinity", "oo"):
            return INF
        return Fraction(s)
    return Fraction(x)


def format_value(v: Value) -> str:
    """Canonical string form: ``"inf"``, ``"3"`` or ``"3/2"``."""
    if v is INF:
        return "inf"
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def rat_arith(a, b, op: str):
    """Exact arithmetic on Values.

    ``op`` is one of ``+ - * / cmp min``.  ``cmp`` returns -1, 0 or 1.
    Infinity is accepted only by ``+``, ``cmp`` and ``min``.
    """
    a, b = as_value(a), as_value(b)
    if op == "+":
        return a + b
    if op == "cmp":
        return (a > b) - (a < b)
    if op == "min":
        return min(a, b)
    if a is INF or b is INF:
        raise ValueError(f"infinity not allowed under {op!r}")
    if op == "-":
        return a - b
    if op in ("*", "x"):
        return a * b
    if op == "/":
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")
