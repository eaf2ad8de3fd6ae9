import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from valext.arith import GF, INF, Poly
from valext.basefield import make_valuation
from valext.errors import ConditionStarError
from valext.extend import enumerate_extensions, extension_value
from valext.maclane import (InductiveValuation, augment, chain_value, lift_key,
                            residual_polynomial, standard_expansion)
from valext.newton import lower_hull

from _gen import random_poly
from _oracles import eisenstein_int, mul_int, shift_int, unramified_int


def q(p):
    v = make_valuation("q", p)
    return v, v.gen()


def level1_side(iv, h):
    vals = iv.expand(h).values
    return lower_hull(list(enumerate(vals))).sides


# -- examples ------------------------------------------------------------------------

def test_standard_expansion_examples():
    v, x = q(2)
    d = standard_expansion(x ** 2 + 4, x - 2)
    assert d == [v.poly([8]), v.poly([4]), v.poly([1])]
    assert standard_expansion(x + 3, x ** 2 + 1) == [x + 3]
    Q = x ** 2 + 1
    assert standard_expansion(Q, Q) == [v.poly([]), v.poly([1])]


@given(st.lists(st.integers(-50, 50), max_size=9),
       st.lists(st.integers(-9, 9), min_size=1, max_size=3))
def test_standard_expansion_reconstructs(hc, qc):
    v, x = q(3)
    h, Q = v.poly(hc), v.poly(qc + [1])
    coeffs = standard_expansion(h, Q)
    acc = v.poly([])
    for d in reversed(coeffs):
        assert d.degree < Q.degree
        acc = acc * Q + d
    assert acc == h


def test_chain_value_examples():
    v, x = q(2)
    iv = InductiveValuation.first(v, Fraction(1, 2))
    assert chain_value(iv, x ** 3 + 2 * x + 4) == Fraction(3, 2)
    assert chain_value(iv, v.poly([1])) == 0
    assert chain_value(iv, v.poly([])) is INF
    iv = InductiveValuation.first(v, 1)
    iv2 = augment(iv, x - 2, Fraction(3, 2), Poly(GF(2), [1, 1], "y"))
    assert chain_value(iv2, x ** 2 + 4) == 3
    assert iv2.value_group_denominator == 2 and iv2.residue_tower.order == 2


def test_reduce_and_lift_examples():
    v, x = q(2)
    iv = InductiveValuation.first(v, Fraction(1, 2))
    y = Poly(GF(2), [0, 1], "y")
    assert iv.reduce(x ** 2 * Fraction(-1, 2)) == y
    assert iv.reduce(v.poly([3])) == Poly(GF(2), [1], "y")
    assert iv.lift(GF(2).one) == v.poly([1])
    with pytest.raises(ValueError):
        iv.reduce(x)


def test_residual_polynomial_examples():
    v, x = q(2)
    iv = InductiveValuation.first(v, Fraction(1, 2))
    (side,) = level1_side(iv, x ** 2 - 2)
    assert residual_polynomial(iv, x ** 2 - 2, side) == Poly(GF(2), [1, 1], "y")
    iv = InductiveValuation.first(v, 1)
    (side,) = level1_side(iv, x ** 2 + 4)
    assert residual_polynomial(iv, x ** 2 + 4, side) == Poly(GF(2), [1, 0, 1], "y")
    v5, y5 = q(5)
    iv = InductiveValuation.first(v5, 1)
    (side,) = level1_side(iv, y5 ** 2 + 25)
    assert residual_polynomial(iv, y5 ** 2 + 25, side) == Poly(GF(5), [1, 0, 1], "y")


def same_key_class(iv, Q, R):
    # keys agreeing modulo terms of larger value define the same augmentation
    return iv.value(Q - R) > iv.value(Q) == iv.value(R)


def test_lift_key_examples():
    v, x = q(2)
    iv = InductiveValuation.first(v, Fraction(1, 2))
    (side,) = level1_side(iv, x ** 2 - 2)
    Q, alpha = lift_key(iv, side, Poly(GF(2), [1, 1], "y"))
    assert (Q, alpha) == (x ** 2 + 2, 2)
    assert same_key_class(iv, Q, x ** 2 - 2)
    iv = InductiveValuation.first(v, 1)
    (side,) = level1_side(iv, x ** 2 + 4)
    Q, alpha = lift_key(iv, side, Poly(GF(2), [1, 1], "y"))
    assert (Q, alpha) == (x + 2, 1)
    assert same_key_class(iv, Q, x - 2)
    assert chain_value(iv, Q) == 1
    v5, y = q(5)
    iv = InductiveValuation.first(v5, 1)
    (side,) = level1_side(iv, y ** 2 + 25)
    Q, alpha = lift_key(iv, side, Poly(GF(5), [2, 1], "y"))
    # psi = z + 2 has root z = -2, i.e. y/5 = -2 (mod 5)
    assert Q == y + 10 and alpha == 1
    assert chain_value(iv, Q) == 1
    assert chain_value(iv.augment(Q, 2, Poly(GF(5), [2, 1], "y")), y ** 2 + 25) == 3
    # y - 10 belongs to the other root, psi = z + 3
    Q3, _ = lift_key(iv, side, Poly(GF(5), [3, 1], "y"))
    assert same_key_class(iv, Q3, y - 10) and not same_key_class(iv, Q, y - 10)


def test_augment_examples_and_condition_star():
    v, x = q(2)
    iv = InductiveValuation.first(v, 1)
    psi = Poly(GF(2), [1, 1], "y")
    iv2 = iv.augment(x - 2, Fraction(3, 2), psi)
    assert iv2.value_group_denominator == 2 and iv2.residue_tower.absolute_degree == 1
    with pytest.raises(ConditionStarError) as exc:
        iv.augment(x - 2, 1, psi)
    assert exc.value.beta_prev == 1 and exc.value.beta_next == 1
    v5, y = q(5)
    iv = InductiveValuation.first(v5, 1)
    psi = Poly(GF(5), [4, 3, 1], "y")
    Q, alpha = iv.lift_key(None, psi)
    assert Q.degree == 2 and alpha == 2
    iv2 = iv.augment(Q, 3, psi)
    assert iv2.residue_tower.absolute_degree == 2


# -- chains from real runs --------------------------------------------------------------

def _collect_chains():
    cases = [("q", 2, [-2, 0, 1]), ("q", 2, [4, 0, 1]), ("q", 5, [-2, 0, 0, 1]),
             ("q", 5, [1, 0, 1]), ("q", 3, [3, 0, 0, 0, 0, 1])]
    rng = random.Random(7)
    for p in (2, 3, 5):
        for _ in range(3):
            g = rng.choice([eisenstein_int, unramified_int])(rng, p, rng.randint(2, 3))
            f = mul_int(g, shift_int(g, p ** rng.randint(1, 4)))
            cases.append(("q", p, f))
    out = []
    for base, p, cs in cases:
        v = make_valuation(base, p)
        rep = enumerate_extensions(v.poly(cs), v)
        out.extend(rep.leaves)
    t = make_valuation("fpt", 3)
    T = t.field.t
    X = t.gen()
    for f in (X ** 2 - T, (X ** 2 - T) * (X ** 2 - T - T ** 3), X ** 3 + T * X + T ** 2 + T):
        out.extend(enumerate_extensions(f, t).leaves)
    return out


LEAVES = _collect_chains()


def test_collected_chains_are_deep_enough():
    assert max(lf.chain.depth for lf in LEAVES) >= 3


@pytest.mark.parametrize("leaf", LEAVES, ids=lambda lf: f"{lf.chain.base.kind}{lf.chain.base.p}-d{lf.chain.depth}")
def test_valuation_axioms_and_monotonicity(leaf):
    iv = leaf.chain
    v = iv.base
    rng = random.Random(repr(iv))
    for _ in range(60):
        g, h = random_poly(v, rng), random_poly(v, rng)
        for level in range(1, iv.depth + 1):
            vg, vh = iv.value(g, level), iv.value(h, level)
            assert iv.value(g * h, level) == vg + vh
            assert iv.value(g + h, level) >= min(vg, vh)
        vals = [iv.value(g, lv) for lv in range(1, iv.depth + 1)]
        assert vals == sorted(vals)


@pytest.mark.parametrize("leaf", LEAVES[:12], ids=lambda lf: f"{lf.chain.base.kind}{lf.chain.base.p}-d{lf.chain.depth}")
def test_chain_values_bound_the_extension_and_stabilize(leaf):
    iv = leaf.chain
    v = iv.base
    rng = random.Random(repr(iv) + "s")
    n = leaf.poly.degree
    keys = iv.keys + [leaf.approx_factor]
    for _ in range(15):
        h = random_poly(v, rng, n - 1)
        if h.is_zero():
            continue
        w = extension_value(leaf, h)
        for level in range(1, iv.depth + 1):
            assert iv.value(h, level) <= w
            # below the degree of the next key the chain value is already final
            if h.degree < keys[level].degree:
                assert iv.value(h, level) == w


def test_key_degrees_are_products_of_alphas():
    for leaf in LEAVES:
        iv = leaf.chain
        deg = 1
        for lv in iv.levels:
            deg *= lv.alpha
            assert lv.key.degree == deg


@pytest.mark.parametrize("leaf", LEAVES, ids=lambda lf: f"{lf.chain.base.kind}{lf.chain.base.p}-d{lf.chain.depth}")
def test_reduce_lift_round_trip_and_multiplicativity(leaf):
    iv = leaf.chain
    if iv.top.beta is INF:
        iv = iv.truncate(iv.depth - 1)
        if iv.depth == 0:
            return
    kappa = iv.residue_tower
    rng = random.Random(repr(iv) + "r")
    lifted = []
    for _ in range(20):
        R = Poly(kappa, [kappa.random_element(rng) for _ in range(rng.randint(1, 3))] + [kappa.one], "y")
        h = iv.lift(R)
        assert iv.value(h) == 0
        assert iv.reduce(h) == R
        lifted.append(h)
    for a, b in zip(lifted, lifted[1:]):
        assert iv.reduce(a * b) == iv.reduce(a) * iv.reduce(b)


def test_lift_consistency_of_new_keys():
    for leaf in LEAVES:
        iv = leaf.chain
        for i in range(1, iv.depth):
            prefix = iv.truncate(i)
            lv, nxt = iv.levels[i - 1], iv.levels[i]
            # v_i(Q_{i+1}) = alpha_{i+1} * beta_i, and Q_{i+1} reduces back to psi
            assert prefix.value(nxt.key) == nxt.alpha * lv.beta
            vals = prefix.expand(nxt.key).values
            (side,) = lower_hull(list(enumerate(vals)), prefix.value_group_denominator).sides
            assert prefix.residual_polynomial(nxt.key, side) == nxt.psi


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_residual_polynomial_shape(seed):
    rng = random.Random(seed)
    leaf = rng.choice(LEAVES)
    iv = leaf.chain
    if iv.top.beta is INF:
        return
    g = leaf.poly
    vals = iv.expand(g).values
    poly = lower_hull(list(enumerate(vals)), iv.truncate(iv.depth - 1).value_group_denominator)
    side = poly.side_for(iv.top.beta)
    R = iv.residual_polynomial(g, side)
    assert R.degree == side.length // iv.top.e_rel
    assert not R.coeffs[0].is_zero()
