"""Newton polygons: lower convex hulls of (index, value) point sets.

Indices run along the horizontal axis and values along the vertical one.  A
side with slope ``-beta`` collects the terms ``d_j Q^j`` whose values
``value_j + j*beta`` tie for the minimum; ``beta`` is the candidate value
of the key polynomial ``Q``.  Everything is exact (Fractions, no tolerance).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .arith import INF, Value


@dataclass(frozen=True)
class PolygonPoint:
    index: int
    value: Value


@dataclass(frozen=True)
class Side:
    beta: Fraction
    left: PolygonPoint
    right: PolygonPoint
    support: tuple[int, ...]
    e_rel: int

    @property
    def length(self) -> int:
        return self.right.index - self.left.index

    @property
    def degree(self) -> int:
        """Degree of the residual polynomial attached to this side."""
        return self.length // self.e_rel

    def line_value(self) -> Fraction:
        """Common value of the tied terms, ``value_j + j*beta``."""
        return self.left.value + self.left.index * self.beta


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[PolygonPoint, ...]
    vertices: tuple[PolygonPoint, ...]
    sides: tuple[Side, ...]
    value_denominator: int = 1

    def side_for(self, beta) -> Optional[Side]:
        for s in self.sides:
            if s.beta == beta:
                return s
        return None

    def value_at(self, index: int) -> Value:
        for pt in self.points:
            if pt.index == index:
                return pt.value
        return INF

    @property
    def min_index(self) -> int:
        return self.vertices[0].index

    @property
    def max_index(self) -> int:
        return self.vertices[-1].index


@dataclass(frozen=True)
class PolygonInvariants:
    """Numerical characters of a polygon with respect to a chosen side."""

    delta: int
    epsilon: object  # int or INF
    nu_plus: Value
    theta: int
    pivotal_vertex: PolygonPoint
    characteristic_vertex: Optional[PolygonPoint]
    beta: Fraction = field(default=Fraction(0))

    def as_pair(self):
        return (self.delta, self.epsilon)


def _cross(o: PolygonPoint, a: PolygonPoint, b: PolygonPoint) -> Fraction:
    return (a.index - o.index) * (b.value - o.value) - (a.value - o.value) * (b.index - o.index)


def relative_ramification(beta: Fraction, value_denominator: int = 1) -> int:
    """Order of ``beta`` modulo the group ``(1/value_denominator) Z``."""
    return Fraction(beta * value_denominator).denominator


def lower_hull(points: Iterable, value_denominator: int = 1) -> NewtonPolygon:
    """Lower convex hull of the finite points; sides ordered by index.

    ``points`` holds :class:`PolygonPoint` or ``(index, value)`` pairs.
    Points with value ``INF`` are dropped.  ``value_denominator`` is ``E``
    where the coefficient values live in ``(1/E) Z``; it fixes ``e_rel``.
    """
    pts = []
    seen = set()
    for pt in points:
        if not isinstance(pt, PolygonPoint):
            pt = PolygonPoint(int(pt[0]), pt[1])
        if pt.index in seen:
            raise ValueError(f"duplicate index {pt.index}")
        seen.add(pt.index)
        if pt.value is INF:
            continue
        pts.append(PolygonPoint(pt.index, Fraction(pt.value)))
    if not pts:
        raise ValueError("Newton polygon of an empty point set")
    pts.sort(key=lambda q: q.index)
    hull: list[PolygonPoint] = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    sides = []
    for a, b in zip(hull, hull[1:]):
        beta = -(b.value - a.value) / (b.index - a.index)
        support = tuple(q.index for q in pts
                        if a.index <= q.index <= b.index
                        and q.value + q.index * beta == a.value + a.index * beta)
        sides.append(Side(beta, a, b, support, relative_ramification(beta, value_denominator)))
    return NewtonPolygon(tuple(pts), tuple(hull), tuple(sides), value_denominator)


def support(poly: NewtonPolygon, beta) -> tuple[int, ...]:
    """Indices where ``value_j + j*beta`` attains its minimum."""
    vals = [(q.value + q.index * beta, q.index) for q in poly.points]
    m = min(v for v, _ in vals)
    return tuple(i for v, i in vals if v == m)


def determines_side(poly: NewtonPolygon, beta) -> bool:
    if beta is INF:
        return False
    return len(support(poly, Fraction(beta))) >= 2


def characteristic_index(poly: NewtonPolygon, slope_value) -> int:
    """Least index attaining ``min(value_j + j*slope_value)``."""
    return min(support(poly, slope_value))


def polygon_invariants(poly: NewtonPolygon, chosen_beta, theta: Optional[int] = None) -> PolygonInvariants:
    """delta, epsilon, nu_plus and the pivotal/characteristic vertices.

    ``theta`` is the index of the characteristic vertex; by default the
    largest index of the polygon (the level-one convention theta = n).
    """
    if not determines_side(poly, chosen_beta):
        raise ValueError(f"beta = {chosen_beta} does not determine a side")
    beta = Fraction(chosen_beta)
    sup = support(poly, beta)
    delta = max(sup)
    above = [(q.value + q.index * beta, q.index) for q in poly.points if q.index > delta]
    if above:
        nu_plus = min(v for v, _ in above)
        epsilon = max(i for v, i in above if v == nu_plus)
    else:
        nu_plus = INF
        epsilon = INF
    if theta is None:
        theta = poly.max_index
    pivotal = PolygonPoint(delta, poly.value_at(delta))
    char = None
    for vtx in poly.vertices:
        if vtx.index == theta:
            char = vtx
    return PolygonInvariants(delta, epsilon, nu_plus, theta, pivotal, char, beta)
