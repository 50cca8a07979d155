import pytest
from hypothesis import given, strategies as st

from heckoid.word import (
    CyclicSequence,
    CyclicWord,
    SingleSignError,
    WordError,
    contains_subsequence,
    cyclic_s_sequence,
    cyclically_reduce,
    free_reduce,
    inverse,
    is_alternating,
    is_cyclic_shift,
    rotate,
    s_sequence,
)

words = st.text(alphabet="abAB", max_size=40)


def test_reduction():
    assert free_reduce("abBA") == ""
    assert free_reduce("aAbab") == "bab"
    assert cyclically_reduce("Baab") == "aa"
    with pytest.raises(WordError):
        free_reduce("abc")


@given(words)
def test_inverse_cancels(w):
    assert free_reduce(w + inverse(w)) == ""
    assert inverse(inverse(w)) == w


@given(words)
def test_s_sequence_sums_to_length(w):
    if w:
        assert sum(s_sequence(w)) == len(w)


@given(words, st.integers(0, 100))
def test_cyclic_s_sequence_rotation_invariant(w, k):
    w = cyclically_reduce(w)
    if not w or w.islower() or w.isupper():
        return
    assert cyclic_s_sequence(w) == cyclic_s_sequence(rotate(w, k))
    assert len(cyclic_s_sequence(w)) % 2 == 0


def test_single_sign():
    with pytest.raises(SingleSignError):
        cyclic_s_sequence("ab")
    assert cyclic_s_sequence("ab", allow_single_sign=True).runs == (2,)
    assert cyclic_s_sequence("aB") == CyclicSequence((1, 1))


def test_cyclic_word_equality():
    assert CyclicWord("abAB") == CyclicWord("BabA")
    assert CyclicWord("abAB") != CyclicWord("aBAb")
    assert len({CyclicWord("abAB"), CyclicWord("ABab")}) == 1
    with pytest.raises(WordError):
        CyclicWord("abA")
    assert is_cyclic_shift("abA", "bAa")


def test_cyclic_sequence_rotation_only():
    cs = CyclicSequence((1, 2, 3))
    assert cs == CyclicSequence((2, 3, 1))
    assert cs != CyclicSequence((3, 2, 1))
    assert cs.equal_up_to_reversal((3, 2, 1))


def test_contains_subsequence():
    cs = CyclicSequence((3, 2, 2, 3, 2, 2))
    assert contains_subsequence(cs, (2, 3, 2))
    assert contains_subsequence(cs, (2, 2, 3, 2, 2, 3))
    assert not contains_subsequence(cs, (3, 3))
    assert not contains_subsequence(cs, (2,) * 7)
    assert not contains_subsequence(CyclicSequence((2, 2)), (2, 2, 2))
    with pytest.raises(WordError):
        contains_subsequence(cs, ())


def test_alternating():
    assert is_alternating("abAB")
    assert not is_alternating("aab")
    assert is_alternating(CyclicWord("abaB"))
    assert not is_alternating(CyclicWord("aba"))
