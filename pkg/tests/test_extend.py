import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from valext.arith import INF
from valext.basefield import make_valuation
from valext.errors import InvariantError, NonTerminationError, NotSquarefreeError
from valext.extend import (Options, enumerate_extensions, extension_value, is_unique,
                           node_invariant_checks, ramification_sum_check, report_dict, to_json)

from valext.maclane import standard_expansion
from valext.newton import lower_hull, polygon_invariants

from _gen import construction_case
from _oracles import sylvester_resultant

GOLDENS = Path(__file__).parent / "goldens"


def run(base, p, coeffs, **kw):
    v = make_valuation(base, p)
    return enumerate_extensions(v.poly(coeffs), v, Options(**kw))


def efd(report):
    return sorted((lf.e, lf.f, lf.d) for lf in report.leaves)


def fpt(p):
    v = make_valuation("fpt", p)
    return v, v.gen(), v.field.t


# -- worked cases ---------------------------------------------------------------------

def test_eisenstein_quadratic():
    r = run("q", 2, [-2, 0, 1])
    assert efd(r) == [(2, 1, 1)] and r.unique
    (leaf,) = r.leaves
    assert leaf.beta_chain == [Fraction(1, 2)] and str(leaf.key_polynomials[0]) == "x"
    assert r.tree.theta == 2 and [c.alpha * c.theta for c in r.tree.children] == [2]


def test_split_and_inert_cases():
    r = run("q", 5, [1, 0, 1])
    assert efd(r) == [(1, 1, 1), (1, 1, 1)] and not r.unique
    r = run("q", 5, [-2, 0, 0, 1])
    assert efd(r) == [(1, 1, 1), (1, 2, 1)]
    assert sum(c.alpha * c.theta for c in r.tree.children) == 3 == r.tree.theta
    assert efd(run("q", 2, [-2, 0, 0, 1])) == [(3, 1, 1)]
    assert efd(run("q", 7, [-1, 1])) == [(1, 1, 1)]


def test_two_level_chain():
    v = make_valuation("q", 2)
    x = v.gen()
    r = enumerate_extensions(x ** 2 + 4, v)
    (leaf,) = r.leaves
    assert (leaf.e, leaf.f, leaf.d) == (2, 1, 1) and r.unique
    assert leaf.beta_chain == [1, Fraction(3, 2)]
    # x + 2 and x - 2 differ by 4, of value 2 > 1: the same key class
    assert leaf.key_polynomials == [x, x + 2]
    # x^2 + 4 = (x + 2)^2 - 4(x + 2) + 8: support {0, 2} at beta = 3/2, so delta stays 2
    (c1,) = r.tree.children
    (c2,) = c1.node.children
    assert c1.invariants.delta == 2 and c2.invariants.delta == 2
    assert c1.node.alpha * c2.invariants.delta <= c1.invariants.delta
    # and drops to 1 against the degree-2 approximant
    coeffs = standard_expansion(r.normalized, leaf.approx_factor)
    vals = [leaf.chain.value(d) for d in coeffs]
    poly = lower_hull(list(enumerate(vals)), leaf.e)
    assert c2.alpha == 2 and polygon_invariants(poly, poly.sides[0].beta).delta == 1


def test_function_field_cases():
    v, X, t = fpt(3)
    r = enumerate_extensions(X ** 2 - t, v)
    assert efd(r) == [(2, 1, 1)] and r.unique
    r = enumerate_extensions(X ** 2 - X - t, v)
    assert efd(r) == [(1, 1, 1), (1, 1, 1)]
    assert sorted(lf.generator_value for lf in r.leaves) == [0, 1]
    assert r.shift == 1


def test_root_factor_gives_infinite_leaf():
    r = run("q", 3, [0, -1, 1])  # x^2 - x
    vals = sorted((lf.generator_value for lf in r.leaves), key=lambda b: (b is INF, b))
    assert vals == [0, INF] and efd(r) == [(1, 1, 1), (1, 1, 1)]
    assert sorted(str(lf.beta_chain[0]) for lf in r.leaves) == ["1", "inf"]


def test_ramification_sum_check_examples():
    for args in [("q", 5, [-2, 0, 0, 1]), ("q", 2, [-2, 0, 1]), ("q", 11, [-1, 1])]:
        assert ramification_sum_check(run(*args))


def test_is_unique_examples():
    assert is_unique(run("q", 2, [-2, 0, 1]))
    assert not is_unique(run("q", 5, [1, 0, 1]))
    assert is_unique(run("q", 2, [4, 0, 1]))


# -- extension values -------------------------------------------------------------------

def test_extension_value_examples():
    v = make_valuation("q", 2)
    x = v.gen()
    (leaf,) = enumerate_extensions(x ** 2 - 2, v).leaves
    assert extension_value(leaf, x) == Fraction(1, 2)
    assert extension_value(leaf, 2 * x + 4) == Fraction(3, 2)
    assert extension_value(leaf, 1) == 0
    assert extension_value(leaf, v.poly([])) is INF
    assert extension_value(leaf, x ** 2 - 2) is INF


def test_extension_value_in_the_input_variable():
    v = make_valuation("q", 5)
    x = v.gen()
    r = enumerate_extensions(x ** 2 + 1, v)
    assert r.shift == 1
    # roots of x^2 + 1 are 5-adic units; x - 2 vanishes to order 1 at exactly one of them
    vals = sorted(extension_value(lf, x - 2, original=True) for lf in r.leaves)
    assert vals == [0, 1]
    assert all(extension_value(lf, x, original=True) == 0 for lf in r.leaves)


def _value_sum(report, h):
    tot = Fraction(0)
    for lf in report.leaves:
        w = extension_value(lf, h)
        if w is INF:
            return INF
        tot += lf.e * lf.f * w
    return tot


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_norm_oracle_resultant(seed):
    # sum over leaves of e*f*v'(h) = v(Res(g, h)) for monic g
    rng = random.Random(seed)
    base = rng.choice(["q", "fpt"])
    v = make_valuation(base, rng.choice([2, 3, 5]))
    f, _ = construction_case(v, rng)
    if f is None:
        return
    r = enumerate_extensions(f, v)
    g = r.normalized
    U = v.uniformizer
    for _ in range(3):
        h = v.poly([U ** rng.randint(0, 3) * rng.randint(-4, 4)
                    for _ in range(rng.randint(1, g.degree))])
        if rng.random() < 0.25:
            # a factor of g forces an infinite value on some leaf
            h = h * r.leaves[0].approx_factor
        h = h % g
        if h.is_zero():
            continue
        res = sylvester_resultant(g.coeffs, h.coeffs, v.field(1))
        assert _value_sum(r, h) == (INF if res == 0 else v.value(res))


# -- construction oracle --------------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_construction_oracle(seed):
    rng = random.Random(seed)
    v = make_valuation(rng.choice(["q", "fpt"]), rng.choice([2, 3, 5]))
    f, expect = construction_case(v, rng)
    if f is None:
        return
    r = enumerate_extensions(f, v)
    assert efd(r) == expect
    assert r.invariant_log


def test_construction_oracle_reaches_deep_chains():
    rng = random.Random(11)
    deepest = 0
    for _ in range(60):
        v = make_valuation(rng.choice(["q", "fpt"]), rng.choice([2, 3, 5]))
        f, expect = construction_case(v, rng)
        if f is None:
            continue
        r = enumerate_extensions(f, v)
        assert efd(r) == expect
        deepest = max([deepest] + [len(lf.beta_chain) for lf in r.leaves])
    assert deepest >= 4


# -- invariants, options, negative controls ----------------------------------------------

def test_invariant_log_mentions_each_check():
    r = run("q", 2, [4, 0, 1])
    text = "\n".join(r.invariant_log)
    assert "sum alpha*theta = theta" in text
    assert "beta > alpha*beta_prev" in text
    assert "alpha*delta <= delta_prev" in text
    assert "leaf approximant theta = 1" in text
    assert run("q", 2, [4, 0, 1], check_invariants=False).invariant_log == []


def test_invariant_checks_catch_a_corrupted_tree():
    r = run("q", 5, [-2, 0, 0, 1])
    r.tree.theta += 1
    with pytest.raises(InvariantError) as exc:
        node_invariant_checks(r.tree, r.normalized)
    assert "sum alpha*theta" in str(exc.value)
    r = run("q", 2, [4, 0, 1])
    r.tree.children[0].node.children[0].beta = Fraction(1, 2)
    with pytest.raises(InvariantError, match=r"condition \(\*\)"):
        node_invariant_checks(r.tree, r.normalized)


def test_not_squarefree_and_non_termination():
    v = make_valuation("q", 3)
    x = v.gen()
    with pytest.raises(NotSquarefreeError):
        enumerate_extensions((x - 1) ** 2 * (x + 1), v)
    with pytest.raises(NonTerminationError) as exc:
        run("q", 2, [4, 0, 1], max_augmentations=1)
    assert "Case 2b" in str(exc.value)
    assert exc.value.betas == [1]
    # the default budget is ample
    assert len(run("q", 2, [4, 0, 1]).leaves) == 1


def test_parallel_matches_sequential():
    for args in [("q", 5, [-2, 0, 0, 1]), ("q", 3, [6, -1, -6, 0, 1]), ("q", 2, [0, 3, -3, 0, 1])]:
        a = to_json(run(*args))
        b = to_json(run(*args, parallel=True, workers=4))
        assert a == b


def test_seed_does_not_change_output():
    outs = {to_json(run("q", 3, [1, 2, 3, 4, 5, 1], seed=s)) for s in range(4)}
    assert len(outs) == 1


# -- serialization ----------------------------------------------------------------------

def test_report_schema():
    d = report_dict(run("q", 2, [-2, 0, 1]))
    assert list(d) == ["input", "leaves", "unique", "sum_efd", "invariants_checked"]
    assert d["input"] == {"base": "q", "p": 2, "poly": "x^2 - 2", "shift": 0}
    (leaf,) = d["leaves"]
    assert leaf == {"e": 2, "f": 1, "d": 1, "beta_chain": ["1/2"], "key_polynomials": ["x"],
                    "generator_value": "1/2"}
    assert d["unique"] is True and d["sum_efd"] == 2 and d["invariants_checked"] > 0


GOLDEN_CASES = {
    "x2m2_p2": ("q", 2, [-2, 0, 1]),
    "x2p1_p5": ("q", 5, [1, 0, 1]),
    "x3m2_p5": ("q", 5, [-2, 0, 0, 1]),
    "x2p4_p2": ("q", 2, [4, 0, 1]),
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_json_matches_golden(name):
    out = to_json(run(*GOLDEN_CASES[name]))
    assert out == (GOLDENS / f"{name}.json").read_text()
    json.loads(out)


def test_function_field_golden():
    v, X, t = fpt(3)
    out = to_json(enumerate_extensions(X ** 2 - X - t, v))
    assert out == (GOLDENS / "x2mxmt_f3t.json").read_text()


def test_generator_value_is_unshifted():
    r = run("q", 5, [1, 0, 1])
    assert r.shift == 1 and {lf.generator_value for lf in r.leaves} == {0}
    assert {lf.beta_chain[0] for lf in r.leaves} == {1}
    r = run("q", 2, [-1, 1])
    assert r.leaves[0].generator_value == 0
