import pytest
from hypothesis import given

from heckoid.presentation import (
    PresentationError,
    check_corollary_patterns,
    cyclic_t_sequence,
    decomposition_by_recursion,
    decomposition_candidates,
    recover_slope,
    reduced_slope,
    relator,
    riley_word,
    s1_s2_decomposition,
    slope_s_sequence,
    slope_summary,
    t_sequence,
)
from heckoid.rational import Slope, SlopeError
from heckoid.word import CyclicSequence, CyclicWord, is_alternating

from conftest import unit_slopes

S_10_37 = (4, 4, 4, 3, 4, 4, 3, 4, 4, 3, 4, 4, 4, 3, 4, 4, 3, 4, 4, 3)
S_8_35 = (5, 4, 5, 4, 4, 5, 4, 4, 5, 4, 5, 4, 4, 5, 4, 4)


def test_riley_word_small_slopes():
    assert riley_word("0").word == "ab"
    assert riley_word("1").word == "aB"
    assert riley_word("inf").word == ""
    assert riley_word("1/2").word == "abAB"
    assert riley_word("1/3").word == "abaBAB"


def test_printed_sequences():
    assert slope_s_sequence("10/37") == S_10_37
    assert slope_s_sequence("8/35") == S_8_35
    assert t_sequence("10/37") == (3, 2, 2, 3, 2, 2)
    assert t_sequence("8/35") == (1, 2, 2, 1, 2, 2)
    assert slope_s_sequence("1/5") == (5, 5)


def test_printed_decompositions():
    d = s1_s2_decomposition("10/37")
    assert (d.S1, d.S2) == ((4, 4, 4), (3, 4, 4, 3, 4, 4, 3))
    d = s1_s2_decomposition("8/35")
    assert (d.S1, d.S2) == ((5, 4, 5), (4, 4, 5, 4, 4))
    d = s1_s2_decomposition("1/4")
    assert (d.S1, d.S2) == ((), (4,))


def test_reduced_slopes():
    assert reduced_slope("[2,5]") == Slope.of("[4]")
    assert reduced_slope("[2,1,5]") == Slope.of("[5]")
    assert reduced_slope("[3,1,2,3]") == Slope.of("[2,3]")
    assert slope_s_sequence("[2,3]", cyclic=True) == cyclic_t_sequence("10/37")
    assert t_sequence("[2,5]") == (4, 4)


def test_t_sequence_needs_two_terms():
    with pytest.raises(PresentationError):
        t_sequence("1/4")


def test_corollary_examples():
    assert check_corollary_patterns("[2,1,5]")["holds"]
    assert check_corollary_patterns("[2,5]")["holds"]
    assert check_corollary_patterns("[3,2]")["applies"] is False


def test_recover():
    assert recover_slope(slope_s_sequence("10/37", cyclic=True)) == Slope(10, 37)
    assert recover_slope(CyclicSequence((3, 3))) == Slope(1, 3)
    with pytest.raises(PresentationError):
        recover_slope(CyclicSequence((3, 2, 3)))


def test_relator():
    pres = relator("1/2", 2)
    assert pres.relator == "abABabAB"
    assert len(relator("1/3", 2).relator) == 12
    with pytest.raises(SlopeError):
        relator("0", 2)
    with pytest.raises(PresentationError):
        relator("1/3", 1)


def test_summary_keys():
    assert set(slope_summary("10/37")) == {"slope", "word", "s_sequence", "continued_fraction", "t_sequence", "s1", "s2"}


@given(unit_slopes(150))
def test_word_shape(r):
    u = riley_word(r).word
    assert len(u) == 2 * r.denominator
    assert is_alternating(CyclicWord(u))
    cs = slope_s_sequence(r, cyclic=True)
    assert len(cs) == 2 * r.numerator and sum(cs.runs) == 2 * r.denominator


@given(unit_slopes(150))
def test_recursion_matches_direct_split(r):
    d = decomposition_by_recursion(r)
    assert d in decomposition_candidates(r)
    assert d.sequence() == slope_s_sequence(r)
    assert recover_slope(slope_s_sequence(r, cyclic=True)) == r
