"""Inductive (augmented) valuations on K[x].

A chain of levels ``(Q_i, beta_i)`` defines valuations ``v_1 <= v_2 <= ...``
by ``v_i(sum d_j Q_i^j) = min_j (v_{i-1}(d_j) + j*beta_i)`` on standard
expansions, with ``v_0`` the base valuation on constants.

Residues are computed against *monomials* ``pi^c0 * Q_1^c1 * ... * Q_i^ci``,
written as integer exponent vectors ``c``.  Each level fixes a normalizer
monomial ``N_i`` (in ``pi, Q_1, ..., Q_{i-1}``) of value ``e_i * beta_i``;
the residual variable of level ``i`` is the class ``y_i`` of
``Q_i^(e_i) / N_i``.  Residues at level ``i`` are Laurent polynomials in
``y_i`` over the field ``kappa_i``, where ``kappa_1 = F_p`` and
``kappa_{i+1} = kappa_i[y]/(psi_i)``.  Passing from level ``i`` to ``i+1``
evaluates ``y_i`` at the root of ``psi_i``.  Any other choice of
normalizers rescales residual polynomials and their variable by units,
which leaves degrees, irreducibility and multiplicities unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arith import INF, FFElem, FiniteFieldTower, Poly, Value, format_value
from .basefield import BaseValuation
from .errors import ConditionStarError
from .newton import Side, relative_ramification


def standard_expansion(h: Poly, Q: Poly) -> list[Poly]:
    """Coefficients ``d_j`` with ``h = sum d_j Q^j`` and ``deg d_j < deg Q``."""
    if Q.degree < 1:
        raise ValueError("expansion requires a key of degree >= 1")
    if Q.lc != Q.ring.one:
        raise ValueError("expansion requires a monic key")
    out = []
    while not h.is_zero():
        h, r = divmod(h, Q)
        out.append(r)
    return out


@dataclass(frozen=True)
class Expansion:
    coefficients: tuple[Poly, ...]
    values: tuple[Value, ...]

    def reconstruct(self, Q: Poly) -> Poly:
        acc = Poly(Q.ring, [], Q.var)
        for d in reversed(self.coefficients):
            acc = acc * Q + d
        return acc


@dataclass(frozen=True, eq=False)
class Level:
    key: Poly
    beta: Value
    e_rel: int
    psi: Poly
    alpha: int
    kappa: FiniteFieldTower
    root: Optional[FFElem]
    normalizer: Optional[tuple[int, ...]]
    denominator: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def degree(self) -> int:
        return self.key.degree


class InductiveValuation:
    """Immutable chain of levels over a base valuation."""

    def __init__(self, base: BaseValuation, levels: Sequence[Level] = ()):
        self.base = base
        self.levels = tuple(levels)

    # -- structure ---------------------------------------------------------

    @classmethod
    def first(cls, base: BaseValuation, beta, key: Poly | None = None) -> "InductiveValuation":
        """The level-one valuation with key ``x`` (or another monic linear key)."""
        return cls(base).augment(key if key is not None else base.gen(), beta)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def top(self) -> Level:
        return self.levels[-1]

    @property
    def value_group_denominator(self) -> int:
        return self.levels[-1].denominator if self.levels else 1

    E = value_group_denominator

    @property
    def residue_tower(self) -> FiniteFieldTower:
        return self.levels[-1].kappa if self.levels else self.base.residue_field

    @property
    def betas(self) -> list[Value]:
        return [lv.beta for lv in self.levels]

    @property
    def keys(self) -> list[Poly]:
        return [lv.key for lv in self.levels]

    def truncate(self, depth: int) -> "InductiveValuation":
        return InductiveValuation(self.base, self.levels[:depth])

    def __repr__(self):
        pairs = ", ".join(f"({lv.key}, {format_value(lv.beta)})" for lv in self.levels)
        return f"InductiveValuation[{pairs}]"

    def augment(self, key: Poly, beta, psi: Poly | None = None) -> "InductiveValuation":
        """Append ``(key, beta)``; ``psi`` is the residual polynomial ``key`` lifts."""
        if key.lc != key.ring.one:
            raise ValueError("key polynomials must be monic")
        beta = INF if beta is INF else Fraction(beta)
        if not self.levels:
            if key.degree != 1:
                raise ValueError("the first key polynomial must be linear")
            kappa = self.base.residue_field
            if psi is None:
                psi = Poly(kappa, [0, 1], "y")
            root = None
            alpha = 1
            denom_prev = 1
        else:
            prev = self.top
            if prev.beta is INF:
                raise ValueError("cannot augment past an infinite key value")
            if psi is None:
                raise ValueError("psi is required above level one")
            if psi.ring != prev.kappa or psi.degree < 1 or psi.lc != prev.kappa.one:
                raise ValueError("psi must be monic over the previous residue field")
            if key.degree % prev.degree:
                raise ValueError("key degree must be a multiple of the previous key degree")
            alpha = key.degree // prev.degree
            if alpha != prev.e_rel * psi.degree:
                raise ValueError(
                    f"key degree {key.degree} inconsistent with e_rel {prev.e_rel} "
                    f"and deg psi {psi.degree}")
            if beta is not INF and not beta > alpha * prev.beta:
                raise ConditionStarError(prev.beta, alpha, beta)
            if psi.degree >= 2:
                kappa = prev.kappa.extend(psi)
                root = kappa.gen
            else:
                kappa = prev.kappa
                root = -psi.coeffs[0]
                if root.is_zero():
                    raise ValueError("psi must differ from the residual variable")
            denom_prev = prev.denominator
        if beta is INF:
            e_rel, normalizer, denom = 1, None, denom_prev
        else:
            e_rel = relative_ramification(beta, denom_prev)
            denom = denom_prev * e_rel
            normalizer = self.monomial_for_value(e_rel * beta)
        level = Level(key, beta, e_rel, psi.with_var("y"), alpha, kappa, root, normalizer, denom)
        return InductiveValuation(self.base, self.levels + (level,))

    # -- values --------------------------------------------------------------

    def _level_data(self, h: Poly, i: int):
        """(coefficients, values, value) of ``h`` at level ``i`` (cached)."""
        lvl = self.levels[i - 1]
        hit = lvl._cache.get(h)
        if hit is not None:
            return hit
        if i == 1 and lvl.key.degree == 1 and lvl.key.coeffs[0] == lvl.key.ring.zero:
            coeffs = [Poly.constant(h.ring, c, h.var) if c != h.ring.zero
                      else Poly(h.ring, [], h.var) for c in h.coeffs]
        else:
            coeffs = standard_expansion(h, lvl.key)
        vals = [self._value(d, i - 1) for d in coeffs]
        beta = lvl.beta
        best = INF
        for j, w in enumerate(vals):
            if w is INF:
                continue
            t = w + j * beta
            if t < best:
                best = t
        data = (tuple(coeffs), tuple(vals), best)
        lvl._cache[h] = data
        return data

    def _value(self, h: Poly, i: int) -> Value:
        if h.is_zero():
            return INF
        if i == 0:
            if h.degree > 0:
                raise ValueError("level-0 value of a non-constant polynomial")
            v = self.base.value(h.coeffs[0])
            return v if v is INF else Fraction(v)
        return self._level_data(h, i)[2]

    def value(self, h: Poly, level: int | None = None) -> Value:
        """``v_level(h)``; the top level by default."""
        if not isinstance(h, Poly):
            h = Poly.constant(self.base.field, h)
        return self._value(h, self.depth if level is None else level)

    def expand(self, h: Poly, level: int | None = None) -> Expansion:
        i = self.depth if level is None else level
        coeffs, vals, _ = self._level_data(h, i)
        return Expansion(coeffs, vals)

    # -- monomials -------------------------------------------------------------

    def monomial_value(self, c: Sequence[int]) -> Fraction:
        v = Fraction(c[0])
        for j in range(1, len(c)):
            if c[j]:
                v += c[j] * self.levels[j - 1].beta
        return v

    def monomial_poly(self, c: Sequence[int]) -> tuple[Poly, object]:
        """``(prod Q_j^c_j, pi^c_0)`` as a polynomial and a scalar."""
        acc = Poly.constant(self.base.field, 1)
        for j in range(1, len(c)):
            if c[j] < 0:
                raise ValueError("negative key exponent has no polynomial form")
            acc = acc * self.levels[j - 1].key ** c[j]
        return acc, self.base.uniformizer ** c[0]

    def monomial_for_value(self, w, i: int | None = None) -> tuple[int, ...]:
        """Canonical monomial over ``(pi, Q_1..Q_i)`` of value ``w``.

        The exponent of ``Q_j`` lies in ``[0, e_j)`` for every ``j >= 1``.
        """
        i = self.depth if i is None else i
        w = Fraction(w)
        if i == 0:
            if w.denominator != 1:
                raise ValueError(f"{w} is not in the value group")
            return (w.numerator,)
        lvl = self.levels[i - 1]
        denom_prev = self.levels[i - 2].denominator if i >= 2 else 1
        for s in range(lvl.e_rel):
            rest = w - s * lvl.beta if s else w
            if (rest * denom_prev).denominator == 1:
                return self.monomial_for_value(rest, i - 1) + (s,)
        raise ValueError(f"{w} is not in the value group of level {i}")

    def monomial_residue(self, c: Sequence[int], i: int) -> FFElem:
        """Residue in ``kappa_i`` of the value-0 monomial ``c`` over ``(pi, Q_1..Q_{i-1})``."""
        lvl = self.levels[i - 1]
        if i == 1:
            if c[0] != 0:
                raise ValueError("monomial of nonzero value")
            return lvl.kappa.one
        prev = self.levels[i - 2]
        k, rem = divmod(c[i - 1], prev.e_rel)
        if rem:
            raise ValueError("monomial of nonzero value")
        inner = tuple(a + k * b for a, b in zip(c[: i - 1], prev.normalizer))
        res = lvl.kappa(self.monomial_residue(inner, i - 1))
        if k:
            res = res * lvl.root ** k
        return res

    # -- residues ----------------------------------------------------------------

    def graded_residue(self, h: Poly, c: Sequence[int], i: int | None = None) -> dict[int, FFElem]:
        """Residue of ``h / M(c)`` at level ``i`` as ``{k: coeff}`` (powers of ``y_i``).

        ``c`` has length ``i + 1``; terms of value above ``value(c)`` vanish.
        """
        i = self.depth if i is None else i
        lvl = self.levels[i - 1]
        if lvl.beta is INF:
            raise ValueError("no graded residues at an infinite level")
        v = self.monomial_value(c)
        coeffs, vals, best = self._level_data(h, i)
        if best is not INF and best < v:
            raise ValueError(f"element of value {best} below the normalizing value {v}")
        zero = lvl.kappa.zero
        out: dict[int, FFElem] = {}
        for j, (d, w) in enumerate(zip(coeffs, vals)):
            if w is INF or w + j * lvl.beta != v:
                continue
            cj = self.monomial_for_value(w, i - 1)
            r = self._coeff_residue(d, cj, i)
            k, rem = divmod(j - c[i], lvl.e_rel)
            if rem:
                raise AssertionError("exponent mismatch in graded residue")
            mono = tuple(a - b + k * n for a, b, n in zip(cj, c[:i], lvl.normalizer))
            term = r * self.monomial_residue(mono, i)
            out[k] = out.get(k, zero) + term
        return {k: a for k, a in out.items() if not a.is_zero()}

    def _coeff_residue(self, d: Poly, cj: Sequence[int], i: int) -> FFElem:
        """Residue in ``kappa_i`` of ``d / M(cj)`` for ``deg d < deg Q_i``."""
        lvl = self.levels[i - 1]
        if i == 1:
            return lvl.kappa(self.base.shifted_residue(d.coeffs[0], cj[0]))
        lower = self.graded_residue(d, cj, i - 1)
        acc = lvl.kappa.zero
        z = lvl.root
        for k, a in lower.items():
            acc = acc + lvl.kappa(a) * z ** k
        return acc

    def lift_element(self, a: FFElem, w, i: int) -> Poly:
        """Polynomial of degree ``< deg Q_i`` and value ``w`` with residue ``a``.

        The residue is taken at level ``i`` against ``monomial_for_value(w, i-1)``.
        """
        F = self.base.field
        if a.is_zero():
            return Poly(F, [])
        w = Fraction(w)
        if i == 1:
            c = self.monomial_for_value(w, 0)
            return Poly.constant(F, self.base.lift(a.restrict(self.base.residue_field))
                                 * self.base.uniformizer ** c[0])
        lvl, prev = self.levels[i - 1], self.levels[i - 2]
        c = self.monomial_for_value(w, i - 1)
        s, cprime = c[i - 1], c[: i - 1]
        if lvl.kappa.depth > prev.kappa.depth:
            parts = lvl.kappa(a).coefficients()
        else:
            parts = [a.restrict(prev.kappa)]
        acc = Poly(F, [])
        for m, b in enumerate(parts):
            if b.is_zero():
                continue
            t = s + m * prev.e_rel
            wm = w - t * prev.beta
            cm = self.monomial_for_value(wm, i - 2)
            mono = tuple(x - y + m * n for x, y, n in zip(cm, cprime, prev.normalizer))
            rho = self.monomial_residue(mono, i - 1)
            acc = acc + self.lift_element(b / rho, wm, i - 1) * prev.key ** t
        return acc

    def reduce(self, h: Poly) -> Poly:
        """Image of a value-0 polynomial in ``kappa_top[y]``."""
        if not isinstance(h, Poly):
            h = Poly.constant(self.base.field, h)
        v = self.value(h)
        if v != 0:
            raise ValueError(f"reduce needs value 0, got {format_value(v)}")
        r = self.depth
        res = self.graded_residue(h, (0,) * (r + 1), r)
        kappa = self.top.kappa
        deg = max(res) if res else -1
        return Poly(kappa, [res.get(k, kappa.zero) for k in range(deg + 1)], "y")

    def lift(self, R) -> Poly:
        """A value-0 polynomial whose reduction is ``R`` (element or polynomial)."""
        kappa = self.top.kappa
        if not isinstance(R, Poly):
            R = Poly.constant(kappa, kappa(R), "y")
        r = self.depth
        lvl = self.top
        acc = Poly(self.base.field, [])
        for k, a in enumerate(R.coeffs):
            if a.is_zero():
                continue
            wk = -k * lvl.e_rel * lvl.beta
            ck = self.monomial_for_value(wk, r - 1)
            mono = tuple(x + k * n for x, n in zip(ck, lvl.normalizer))
            rho = self.monomial_residue(mono, r)
            acc = acc + self.lift_element(a / rho, wk, r) * lvl.key ** (k * lvl.e_rel)
        return acc

    def residual_polynomial(self, h: Poly, side: Side) -> Poly:
        """Residual polynomial of ``h`` along ``side`` (slope ``-beta_top``).

        Normalized so that the constant term corresponds to the left end of
        the side.  ``deg R = side.length / e_rel`` and ``R(0) != 0``.
        """
        lvl = self.top
        if side.beta != lvl.beta:
            raise ValueError("side slope does not match the top key value")
        r = self.depth
        coeffs, vals, best = self._level_data(h, r)
        s = side.left.index
        if s >= len(vals) or vals[s] != side.left.value or best != side.line_value():
            raise ValueError("side is inconsistent with the Newton polygon of h")
        c = self.monomial_for_value(vals[s], r - 1) + (s,)
        res = self.graded_residue(h, c, r)
        kappa = lvl.kappa
        deg = max(res)
        R = Poly(kappa, [res.get(k, kappa.zero) for k in range(deg + 1)], "y")
        if R.degree != side.length // lvl.e_rel or R.coeffs[0].is_zero():
            raise AssertionError("residual polynomial has the wrong shape")
        return R

    def lift_key(self, side: Side | None, psi: Poly) -> tuple[Poly, int]:
        """Monic key polynomial lifting the irreducible residual factor ``psi``.

        Returns ``(Q_next, alpha)`` with ``deg Q_next = alpha * deg Q_top``.
        """
        lvl = self.top
        if side is not None and side.beta != lvl.beta:
            raise ValueError("side slope does not match the top key value")
        if psi.ring != lvl.kappa or psi.lc != lvl.kappa.one:
            raise ValueError("psi must be monic over the top residue field")
        if psi.coeffs[0].is_zero():
            raise ValueError("psi must not be the residual variable")
        r = self.depth
        e, f = lvl.e_rel, psi.degree
        Q = lvl.key ** (f * e)
        for k in range(f):
            a = psi.coeffs[k]
            if a.is_zero():
                continue
            wk = (f - k) * e * lvl.beta
            ck = self.monomial_for_value(wk, r - 1)
            mono = tuple(x + (k - f) * n for x, n in zip(ck, lvl.normalizer))
            rho = self.monomial_residue(mono, r)
            Q = Q + self.lift_element(a / rho, wk, r) * lvl.key ** (k * e)
        return Q, e * f


def chain_value(iv: InductiveValuation, h: Poly) -> Value:
    return iv.value(h)


def residual_polynomial(iv: InductiveValuation, h: Poly, side: Side) -> Poly:
    return iv.residual_polynomial(h, side)


def lift_key(iv: InductiveValuation, side: Side | None, psi: Poly) -> tuple[Poly, int]:
    return iv.lift_key(side, psi)


def augment(iv: InductiveValuation, key: Poly, beta, psi: Poly) -> InductiveValuation:
    return iv.augment(key, beta, psi)
