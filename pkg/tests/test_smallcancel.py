import random

import pytest

from heckoid.presentation import riley_word
from heckoid.smallcancel import (
    SearchBudgetExceeded,
    SymmetrizedRelatorSet,
    bounded_conjugacy_search,
    compute_pieces,
    dehn_reduce,
    is_trivial,
    maximal_piece2_report,
    maximal_piece_report,
    metric_ratio,
    min_factorization,
    min_piece_count,
    relator_set,
    replay_rewrite,
    verify_C,
    verify_T,
    verify_T4,
)
from heckoid.word import free_reduce, inverse, rotate


def test_symmetrized_set_for_half():
    R = relator_set("1/2", 2)
    # (abAB)^2 has period 4, so 16 rotations give 8 distinct words
    assert len(R) == 8
    assert R.count_with_multiplicity == 16
    assert all(len(e) == 8 for e in R.elements)
    assert all(inverse(e) in R for e in R.elements)
    assert all(rotate(e, 1) in R for e in R.elements)


def test_pieces_of_half():
    R = relator_set("1/2", 2)
    d = compute_pieces(R)
    assert d.max_piece_length == 1
    assert metric_ratio(R) == 1 / 8
    assert min_piece_count(R.relator, R) == 8


def test_conditions_for_half():
    R = relator_set("1/2", 2)
    assert verify_C(R, 8).holds
    assert not verify_C(R, 9).holds
    assert verify_T4(R).holds


def test_proper_power_of_positive_word():
    # (ab)^4 has no pieces: the four distinct rotations start with different letters
    R = SymmetrizedRelatorSet("ab" * 4)
    assert len(R) == 4
    assert compute_pieces(R).max_piece_length == 0
    assert verify_C(R, 8).holds


def test_commutator_relator():
    R = SymmetrizedRelatorSet("abAB")
    # the square tiling: vertices and faces of degree 4
    assert verify_C(R, 4).holds and not verify_C(R, 5).holds
    assert verify_T(R, 4).holds
    rep = verify_T(R, 5)
    assert not rep.holds and len(rep.witness["elements"]) == 4


@pytest.mark.parametrize("r", ["1/3", "2/5", "3/10", "10/37", "1/5", "3/7"])
def test_maximal_piece_lemmas(r):
    assert maximal_piece_report(r, 2)["holds"]
    assert maximal_piece2_report(r, 2)["holds"]


def test_factorization_parts_multiply_back():
    R = relator_set("3/10", 2)
    count, parts = min_factorization(R.relator, R)
    assert "".join(parts) == R.relator
    assert count == len(parts) >= 8


def test_dehn_kills_relator_conjugates():
    rng = random.Random(3)
    for r, n in [("1/2", 2), ("1/3", 3), ("2/5", 2)]:
        R = relator_set(r, n)
        for _ in range(50):
            g = free_reduce("".join(rng.choice("abAB") for _ in range(rng.randint(0, 6))))
            w = free_reduce(g + R.relator + inverse(g))
            assert dehn_reduce(w, R) == ""


def test_rewrites_replay():
    rng = random.Random(11)
    R = relator_set("1/3", 2)
    replayed = 0
    for _ in range(2000):
        w = "".join(rng.choice("abAB") for _ in range(rng.randint(1, 30)))
        if rng.random() < 0.5:
            k = rng.randint(0, len(w))
            w = w[:k] + rotate(rng.choice(R.elements), rng.randint(0, 11))[: rng.randint(7, 12)] + w[k:]
        trace = []
        dehn_reduce(w, R, trace=trace)
        for before, step in trace:
            assert replay_rewrite(before, step, R)
            replayed += 1
    assert replayed > 100


def test_cyclic_triviality():
    R = relator_set("1/2", 2)
    assert is_trivial(riley_word("9/16").word, R)
    assert not is_trivial(riley_word("1/4").word, R)


def test_conjugacy_search():
    R = relator_set("1/2", 2)
    u = riley_word("1/4").word
    v = rotate(u, 3)
    g = bounded_conjugacy_search(u, v, R, 3)
    assert g is not None
    assert dehn_reduce(g + u + inverse(g) + inverse(v), R) == ""
    with pytest.raises(SearchBudgetExceeded):
        bounded_conjugacy_search(u, riley_word("3/4").word, R, 3, budget=5)
