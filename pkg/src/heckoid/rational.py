"""Slopes, continued fractions and the slope symmetries s -> s+1, s -> -s."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union


class SlopeError(ValueError):
    pass


@dataclass(frozen=True)
class Slope:
    """A reduced rational q/p, or infinity stored as 1/0.

    The denominator is never negative; the sign lives in the numerator.
    """

    numerator: int
    denominator: int

    def __post_init__(self):
        num, den = int(self.numerator), int(self.denominator)
        if den == 0:
            if num == 0:
                raise SlopeError("0/0 is not a slope")
            num = 1
        else:
            if den < 0:
                num, den = -num, -den
            g = math.gcd(num, den)
            num, den = num // g, den // g
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def infinity(cls) -> "Slope":
        return cls(1, 0)

    @classmethod
    def of(cls, value: "SlopeLike") -> "Slope":
        if isinstance(value, Slope):
            return value
        if isinstance(value, str):
            return parse_slope(value)
        if isinstance(value, ContinuedFraction):
            return from_continued_fraction(value)
        if isinstance(value, (int, Fraction)):
            f = Fraction(value)
            return cls(f.numerator, f.denominator)
        raise TypeError(f"cannot make a slope from {value!r}")

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    @property
    def is_integer(self) -> bool:
        return self.denominator == 1

    def fraction(self) -> Fraction:
        if self.is_infinite:
            raise SlopeError("infinity has no finite value")
        return Fraction(self.numerator, self.denominator)

    def height(self) -> int:
        return max(abs(self.numerator), self.denominator)

    def _key(self):
        return (1, 0) if self.is_infinite else (0, self.fraction())

    def __lt__(self, other):
        return self._key() < Slope.of(other)._key()

    def __le__(self, other):
        return self._key() <= Slope.of(other)._key()

    def __gt__(self, other):
        return self._key() > Slope.of(other)._key()

    def __ge__(self, other):
        return self._key() >= Slope.of(other)._key()

    def __str__(self):
        if self.is_infinite:
            return "inf"
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self):
        return f"Slope({self})"


SlopeLike = Union[Slope, str, int, Fraction, "ContinuedFraction"]


@dataclass(frozen=True)
class ContinuedFraction:
    """[m1, ..., mk] = 1/(m1 + 1/(m2 + ... + 1/mk)) with mk >= 2 unless k = 1."""

    terms: tuple

    def __post_init__(self):
        terms = tuple(int(t) for t in self.terms)
        if not terms:
            raise SlopeError("empty continued fraction")
        if any(t < 1 for t in terms):
            raise SlopeError(f"continued fraction terms must be positive: {list(terms)}")
        if len(terms) > 1 and terms[-1] < 2:
            raise SlopeError(f"last term must be >= 2 unless k = 1: {list(terms)}")
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __str__(self):
        return "[" + ",".join(map(str, self.terms)) + "]"


def to_continued_fraction(s: SlopeLike) -> ContinuedFraction:
    s = Slope.of(s)
    if s.is_infinite or not (0 < s.numerator <= s.denominator):
        raise SlopeError(f"continued fractions are defined for 0 < s <= 1, got {s}")
    a, b = s.numerator, s.denominator
    terms = []
    while a:
        m, rem = divmod(b, a)
        terms.append(m)
        a, b = rem, a
    return ContinuedFraction(tuple(terms))


def from_continued_fraction(cf: Union[ContinuedFraction, Iterable[int]]) -> Slope:
    if not isinstance(cf, ContinuedFraction):
        cf = ContinuedFraction(tuple(cf))
    num, den = 0, 1
    for m in reversed(cf.terms):
        # x -> 1/(m + x)
        num, den = den, m * den + num
    return Slope(num, den)


_CF_RE = re.compile(r"^\[\s*\d+(\s*,\s*\d+)*\s*\]$")
_Q_RE = re.compile(r"^[+-]?\d+(\s*/\s*[+-]?\d+)?$")


def parse_slope(text: str) -> Slope:
    """Accepts "q/p", "q", "inf" (also "1/0") and "[m1,...,mk]"."""
    t = text.strip()
    if t.lower() in ("inf", "infinity", "oo", "∞"):
        return Slope.infinity()
    if _CF_RE.match(t):
        return from_continued_fraction(int(x) for x in t[1:-1].split(","))
    if _Q_RE.match(t):
        if "/" in t:
            num, den = (int(x) for x in t.split("/"))
        else:
            num, den = int(t), 1
        return Slope(num, den)
    raise SlopeError(f"malformed slope: {text!r}")


def parse_continued_fraction(text: str) -> ContinuedFraction:
    t = text.strip()
    if not _CF_RE.match(t):
        raise SlopeError(f"malformed continued fraction: {text!r}")
    return ContinuedFraction(tuple(int(x) for x in t[1:-1].split(",")))


# Moves recorded by canonicalize_slope: ("shift", k) is s -> s + k, ("negate",) is s -> -s.

def apply_moves(s: SlopeLike, moves) -> Slope:
    s = Slope.of(s)
    for move in moves:
        if s.is_infinite:
            continue
        if move[0] == "shift":
            s = Slope(s.numerator + move[1] * s.denominator, s.denominator)
        elif move[0] == "negate":
            s = Slope(-s.numerator, s.denominator)
        else:
            raise SlopeError(f"unknown move {move!r}")
    return s


def canonicalize_slope(s: SlopeLike):
    """Bring s into (0, 1/2] using integer shifts and negation.

    Returns (s0, moves). Infinity is returned unchanged with no moves;
    integers are sent to 0.
    """
    s = Slope.of(s)
    moves = []
    if s.is_infinite:
        return s, moves
    if s.numerator < 0:
        moves.append(("negate",))
    f = apply_moves(s, moves)
    k = f.numerator // f.denominator
    if k:
        moves.append(("shift", -k))
    f = apply_moves(s, moves)
    if f.numerator == 0:
        return f, moves
    if 2 * f.numerator > f.denominator:
        moves += [("negate",), ("shift", 1)]
    return apply_moves(s, moves), moves
