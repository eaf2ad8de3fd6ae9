"""Exact arithmetic kernel: rationals, finite-field towers, polynomials."""
from .factor import (distinct_degree, equal_degree, ff_factor, is_irreducible,
                     squarefree_decomposition)
from .finite_field import GF, FFElem, FiniteFieldTower
from .poly import Poly, format_poly, poly_gcd, poly_xgcd, powmod
from .values import INF, Rat, Value, as_value, format_value, is_inf, rat_arith


def ff_tower_extend(tower: FiniteFieldTower, m: Poly) -> FiniteFieldTower:
    return tower.extend(m)


def ff_poly_arith(a: Poly, b: Poly, op: str):
    """Dispatch helper over the polynomial operations of :class:`Poly`."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "x"):
        return a * b
    if op == "divmod":
        return divmod(a, b)
    if op == "gcd":
        return poly_gcd(a, b)
    if op == "derivative":
        return a.derivative()
    if op == "eval":
        return a(b)
    raise ValueError(f"unknown operation {op!r}")


__all__ = [
    "GF", "FFElem", "FiniteFieldTower", "INF", "Poly", "Rat", "Value",
    "as_value", "distinct_degree", "equal_degree", "ff_factor",
    "ff_poly_arith", "ff_tower_extend", "format_poly", "format_value",
    "is_inf", "is_irreducible", "poly_gcd", "poly_xgcd", "powmod",
    "rat_arith", "squarefree_decomposition",
]
