"""Factorization of polynomials over finite-field towers.

Pipeline: squarefree decomposition, distinct-degree factorization, then
Cantor-Zassenhaus equal-degree splitting (trace map in characteristic 2).
Randomness comes from ``random.Random(seed)`` created per call, so results
do not depend on call order or threads.
"""
from __future__ import annotations

import random

from .finite_field import FiniteFieldTower
from .poly import Poly, poly_gcd, powmod

DEFAULT_SEED = 0


def _x(field, var):
    return Poly._raw(field, [field.zero, field.one], var)


def _one(field, var):
    return Poly._raw(field, [field.one], var)


def pth_root(g: Poly) -> Poly:
    """For ``g = h(y^p)`` over F_q return ``h`` with coefficients p-th rooted."""
    field: FiniteFieldTower = g.ring
    p, q = field.p, field.order
    exp = q // p
    coeffs = []
    for i, c in enumerate(g.coeffs):
        if i % p:
            if c != field.zero:
                raise ValueError("polynomial is not a p-th power")
            continue
        coeffs.append(c ** exp)
    return Poly._raw(field, coeffs, g.var)


def squarefree_decomposition(g: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree factors ``[(h_i, i)]`` with ``g = lc * prod h_i^i``."""
    if g.is_zero():
        raise ValueError("squarefree decomposition of zero")
    g = g.monic()
    if g.degree < 1:
        return []
    p = g.ring.p
    out: list[tuple[Poly, int]] = []
    c = poly_gcd(g, g.derivative())
    w = g.exact_div(c)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        fac = w.exact_div(y)
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        for h, k in squarefree_decomposition(pth_root(c)):
            out.append((h, k * p))
    return out


def distinct_degree(g: Poly) -> list[tuple[Poly, int]]:
    """Split monic squarefree ``g`` into products of same-degree irreducibles."""
    field = g.ring
    q = field.order
    x = _x(field, g.var)
    out = []
    rest = g
    h = x % rest
    i = 1
    while rest.degree >= 2 * i:
        h = powmod(h, q, rest)
        fac = poly_gcd(rest, h - x)
        if fac.degree > 0:
            out.append((fac, i))
            rest = rest.exact_div(fac)
            h = h % rest
        i += 1
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _random_poly(field, degree_bound, rng, var):
    return Poly._raw(field, [field.random_element(rng) for _ in range(degree_bound)], var)


def equal_degree(g: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split monic squarefree ``g`` whose irreducible factors all have degree ``d``."""
    n = g.degree
    if n <= d:
        return [g]
    field = g.ring
    q = field.order
    while True:
        a = _random_poly(field, n, rng, g.var)
        if a.degree < 1:
            continue
        if field.p == 2:
            # absolute trace F_{q^d} -> F_2
            k = field.absolute_degree * d
            t = a % g
            acc = t
            for _ in range(k - 1):
                t = (t * t) % g
                acc = acc + t
            b = acc
        else:
            b = powmod(a, (q ** d - 1) // 2, g) - _one(field, g.var)
        fac = poly_gcd(g, b)
        if 0 < fac.degree < n:
            return equal_degree(fac, d, rng) + equal_degree(g.exact_div(fac), d, rng)


def factor_key(poly: Poly):
    return (poly.degree, tuple(c.key() for c in poly.coeffs))


def ff_factor(g: Poly, seed: int = DEFAULT_SEED) -> list[tuple[Poly, int]]:
    """Complete factorization of ``g`` into monic irreducibles with multiplicities.

    ``g == g.lc * prod(f**m for f, m in result)``.  Factors are sorted by
    degree, then by their coefficient representations.
    """
    if g.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for sqf, mult in squarefree_decomposition(g):
        for part, d in distinct_degree(sqf):
            for fac in equal_degree(part, d, rng):
                out.append((fac, mult))
    out.sort(key=lambda fm: (factor_key(fm[0]), fm[1]))
    return out


def is_irreducible(g: Poly) -> bool:
    if g.degree < 1:
        return False
    facs = ff_factor(g)
    return len(facs) == 1 and facs[0][1] == 1
