from fractions import Fraction

from hypothesis import strategies as st

from heckoid.rational import Slope


def slopes(max_denom=60, lo=-5, hi=5):
    return st.builds(
        lambda d, x: Slope.of(Fraction(x, d)),
        st.integers(1, max_denom),
        st.integers(lo * max_denom, hi * max_denom),
    )


def unit_slopes(max_denom=60):
    """0 < r < 1."""
    return st.integers(2, max_denom).flatmap(
        lambda p: st.integers(1, p - 1).map(lambda q: Slope(q, p))
    )
