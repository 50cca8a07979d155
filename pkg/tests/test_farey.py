import random
from fractions import Fraction

import pytest

from heckoid.farey import (
    FareyAutomorphism,
    HeckoidContext,
    NormalizationBudgetExceeded,
    compose,
    farey_parents,
    fundamental_intervals,
    in_orbit_of_infinity,
    normalize,
    orbit_search,
)
from heckoid.rational import Slope


CONTEXTS = [("1/2", 2), ("1/3", 2), ("3/10", 2), ("2/5", 3)]


def test_printed_interval():
    iv = fundamental_intervals("3/10", 2)
    assert (iv.lo, iv.r1, iv.r2, iv.hi) == (Slope(0, 1), Slope(5, 17), Slope(7, 23), Slope(1, 1))
    assert not iv.contains("5/17") and iv.contains("7/23") and iv.contains("1")


def test_one_over_p_endpoints():
    # [p, 2n-2] and [p-1, 2]
    for p in range(2, 8):
        for n in (2, 3, 4):
            iv = fundamental_intervals(Slope(1, p), n)
            assert iv.r1 == Slope.of(f"[{p},{2 * n - 2}]")
            assert iv.r2 == Slope.of(f"[{p - 1},2]")


def test_parents():
    assert farey_parents("3/10") == (Slope(2, 7), Slope(1, 3))
    assert farey_parents("1/2") == (Slope(0, 1), Slope(1, 1))


@pytest.mark.parametrize("r,n", CONTEXTS)
def test_parabolic_fixes_r_and_joins_endpoints(r, n):
    ctx = HeckoidContext.create(r, n)
    P = ctx.parabolic
    assert P(ctx.r) == ctx.r
    assert P(ctx.intervals.r1) == ctx.intervals.r2
    assert P.trace == 2


def test_automorphism_algebra():
    g = FareyAutomorphism(2, 1, 1, 1)
    assert (g @ g.inverse()).is_identity()
    with pytest.raises(ValueError):
        FareyAutomorphism(2, 0, 0, 2)
    assert compose([g, g.inverse()]).is_identity()


def _random_word(ctx, rng, length):
    gens = ctx.generators()
    return [rng.choice(gens) for _ in range(length)]


@pytest.mark.parametrize("r,n", CONTEXTS)
def test_normalize_witness_and_invariance(r, n):
    ctx = HeckoidContext.create(r, n)
    rng = random.Random(7)
    for _ in range(300):
        s = Slope.of(Fraction(rng.randint(-200, 200), rng.randint(1, 40)))
        res = normalize(s, ctx)
        assert ctx.in_fundamental_set(res.s0)
        assert compose(res.witness)(s) == res.s0
        assert normalize(res.s0, ctx).s0 == res.s0
        moved = compose(_random_word(ctx, rng, rng.randint(1, 6)))(s)
        assert normalize(moved, ctx).s0 == res.s0


def test_known_normal_forms():
    ctx = HeckoidContext.create("1/2", 2)
    assert normalize("7/4", ctx).s0 == Slope(1, 4)
    assert normalize("-5/3", ctx).s0 == Slope(1, 3)
    assert normalize("1/2", ctx).s0 == Slope(1, 2)
    assert in_orbit_of_infinity("inf", ctx)
    ctx = HeckoidContext.create("3/10", 2)
    assert normalize("31/103", ctx).s0 == Slope(7, 23)


def test_budget_is_reported():
    ctx = HeckoidContext.create("1/2", 2, budget=1)
    with pytest.raises(NormalizationBudgetExceeded):
        normalize("100001/3", ctx)


@pytest.mark.parametrize("r,n", CONTEXTS)
def test_orbit_oracle_agrees(r, n):
    ctx = HeckoidContext.create(r, n)
    for d in range(1, 9):
        for q in range(-d, 2 * d + 1):
            s = Slope(q, d)
            found, _ = orbit_search(s, ctx, max_nodes=400)
            assert found == {normalize(s, ctx).s0}
