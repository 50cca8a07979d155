import itertools
import random

import pytest

from heckoid.decide import (
    REGULAR,
    TORSION_CORE,
    TRIVIAL,
    classify,
    conjugate,
    is_peripheral,
    is_torsion,
    is_trivial_loop,
    proven_scope,
)
from heckoid.farey import HeckoidContext, compose
from heckoid.kleinian import certify, solve_representations
from heckoid.rational import Slope


def test_classes():
    ctx = HeckoidContext.create("1/3", 2)
    assert classify("inf", ctx).kind == TRIVIAL
    assert classify("1/3", ctx).kind == TORSION_CORE
    assert classify("1/5", ctx).kind == REGULAR
    c = classify("9/16", HeckoidContext.create("1/2", 2))
    assert c.kind == TRIVIAL
    assert c.certificates[0]["agrees"]


def test_peripheral_and_torsion():
    ctx = HeckoidContext.create("1/2", 2)
    assert is_peripheral("inf", ctx).answer == "not-applicable"
    assert is_peripheral("1/2", ctx).answer is False
    assert is_peripheral("1/4", ctx).answer is False
    assert is_torsion("1/2", ctx).answer is True
    assert is_torsion("1/4", ctx).answer is False
    assert is_trivial_loop("inf", ctx).answer is True
    g = compose(ctx.generators()[1:3])
    assert is_torsion(g(Slope(1, 2)), ctx).answer is True


def test_scope():
    assert proven_scope(HeckoidContext.create("1/3", 2)) == "this-paper"
    assert proven_scope(HeckoidContext.create("3/4", 2)) == "this-paper"
    assert proven_scope(HeckoidContext.create("3/10", 2)) == "sequel"


def test_verdict_json():
    ctx = HeckoidContext.create("1/2", 2)
    out = conjugate("1/4", "3/4", ctx).to_json()
    assert {"s", "s_prime", "conjugate", "normalized", "proven_scope", "certificates"} <= set(out)
    assert out["conjugate"] is False
    assert out["certificates"][0]["margin"] > 1e-6


def test_conjugate_true_gets_a_conjugator():
    ctx = HeckoidContext.create("1/2", 2)
    v = conjugate("1/4", "7/4", ctx)
    assert v.answer is True
    assert "g" in v.certificates[0]


def test_equivalence_relation():
    rng = random.Random(2)
    for r, n in [("1/2", 2), ("3/10", 2)]:
        ctx = HeckoidContext.create(r, n)
        pool = [Slope(rng.randint(-30, 30), rng.randint(1, 12)) for _ in range(60)]
        norm = {s: classify(s, ctx).normalized for s in pool}
        for s in pool:
            assert conjugate(s, s, ctx).answer
        for _ in range(500):
            a, b, c = (rng.choice(pool) for _ in range(3))
            ab, bc, ac = norm[a] == norm[b], norm[b] == norm[c], norm[a] == norm[c]
            assert ab == (norm[b] == norm[a])
            if ab and bc:
                assert ac


def test_generator_invariance():
    rng = random.Random(9)
    ctx = HeckoidContext.create("2/5", 3)
    for _ in range(200):
        s = Slope(rng.randint(-40, 40), rng.randint(1, 15))
        g = compose(rng.choice(ctx.generators()) for _ in range(rng.randint(1, 5)))
        assert classify(g(s), ctx).normalized == classify(s, ctx).normalized


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_certificates_never_contradict(p, n):
    ctx = HeckoidContext.create(Slope(1, p), n)
    reps = solve_representations(Slope(1, p), n)
    ss = sorted({Slope(q, d) for d in range(1, 13) for q in range(-d, 2 * d + 1)})
    norm = {s: classify(s, ctx, dehn_max_denominator=0).normalized for s in ss}
    for s, t in itertools.combinations(ss, 2):
        if norm[s] == norm[t]:
            assert certify("non-conjugate", [s, t], reps) is None
