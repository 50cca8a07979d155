from fractions import Fraction

import pytest
from hypothesis import given

from heckoid.rational import (
    ContinuedFraction,
    Slope,
    SlopeError,
    apply_moves,
    canonicalize_slope,
    from_continued_fraction,
    parse_slope,
    to_continued_fraction,
)

from conftest import slopes, unit_slopes


def test_normal_form():
    assert Slope(2, 4) == Slope(1, 2)
    assert Slope(3, -6) == Slope(-1, 2)
    assert Slope(5, 0) == Slope.infinity()
    with pytest.raises(SlopeError):
        Slope(0, 0)


def test_parse():
    assert parse_slope("3/10") == Slope(3, 10)
    assert parse_slope("[3,3]") == Slope(3, 10)
    assert parse_slope("inf").is_infinite
    assert parse_slope("-2") == Slope(-2, 1)
    for bad in ["", "1/2/3", "x", "[0,2]", "[2,1]"]:
        with pytest.raises(SlopeError):
            parse_slope(bad)


def test_printed_continued_fractions():
    assert to_continued_fraction("2/9").terms == (4, 2)
    assert to_continued_fraction("3/10").terms == (3, 3)
    assert from_continued_fraction([3, 1, 2, 3]) == Slope(10, 37)
    assert from_continued_fraction([2, 1, 5]) == Slope(6, 17)
    assert str(to_continued_fraction("10/37")) == "[3,1,2,3]"


def test_continued_fraction_shape():
    with pytest.raises(SlopeError):
        ContinuedFraction((2, 1))
    assert ContinuedFraction((1,)).terms == (1,)
    with pytest.raises(SlopeError):
        to_continued_fraction("0")


@given(unit_slopes(300))
def test_continued_fraction_roundtrip(r):
    cf = to_continued_fraction(r)
    assert from_continued_fraction(cf) == r
    assert all(m >= 1 for m in cf.terms)
    assert len(cf) == 1 or cf.terms[-1] >= 2


@given(slopes())
def test_canonicalize_replays(s):
    s0, moves = canonicalize_slope(s)
    assert apply_moves(s, moves) == s0
    assert 0 <= s0.fraction() <= Fraction(1, 2)


def test_ordering():
    assert Slope(1, 3) < Slope(1, 2) < Slope.infinity()
    assert sorted([Slope(1, 2), Slope(0, 1), Slope.infinity()])[-1].is_infinite
