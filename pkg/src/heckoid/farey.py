"""Automorphisms of the Farey tessellation and orbit normalization for the
group generated by the reflections Gamma_infinity and the parabolic C_r(2n).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .rational import Slope, SlopeError, SlopeLike


class NormalizationBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FareyAutomorphism:
    """Integer matrix (a, b; c, d), |det| = 1, acting by s -> (as + b)/(cs + d)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if abs(self.det) != 1:
            raise ValueError(f"determinant must be +-1, got {self.det}")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __call__(self, s: SlopeLike) -> Slope:
        s = Slope.of(s)
        x, y = s.numerator, s.denominator
        return Slope(self.a * x + self.b * y, self.c * x + self.d * y)

    def __matmul__(self, other: "FareyAutomorphism") -> "FareyAutomorphism":
        return FareyAutomorphism(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "FareyAutomorphism":
        e = self.det
        return FareyAutomorphism(e * self.d, -e * self.b, -e * self.c, e * self.a)

    def projectively_equal(self, other: "FareyAutomorphism") -> bool:
        mine, theirs = self.matrix(), other.matrix()
        return mine == theirs or mine == [[-x for x in row] for row in theirs]

    def is_identity(self) -> bool:
        return self.projectively_equal(IDENTITY)

    def matrix(self):
        return [[self.a, self.b], [self.c, self.d]]

    def to_json(self):
        return self.matrix()


IDENTITY = FareyAutomorphism(1, 0, 0, 1)


def compose(maps) -> FareyAutomorphism:
    """The automorphism applying ``maps`` in order (first element first)."""
    g = IDENTITY
    for h in maps:
        g = h @ g
    return g


def gamma_infinity_generator(k: int) -> FareyAutomorphism:
    """Reflection in the vertical Farey edge at the integer k: x -> 2k - x."""
    return FareyAutomorphism(-1, 2 * k, 0, 1)


def translation(t: int) -> FareyAutomorphism:
    return FareyAutomorphism(1, t, 0, 1)


def primitive_parabolic(r: SlopeLike) -> FareyAutomorphism:
    """I + N with N = (pq, -q^2; p^2, -pq): one Farey step around q/p."""
    r = Slope.of(r)
    q, p = r.numerator, r.denominator
    return FareyAutomorphism(1 + p * q, -q * q, p * p, 1 - p * q)


def _parabolic_power(r: Slope, k: int) -> FareyAutomorphism:
    q, p = r.numerator, r.denominator
    return FareyAutomorphism(1 + k * p * q, -k * q * q, k * p * p, 1 - k * p * q)


def _two_n(n) -> int:
    two_n = Fraction(n) * 2
    if two_n.denominator != 1 or two_n < 3:
        raise ValueError(f"n must be an integer or half-integer > 1, got {n}")
    return int(two_n)


def _check_r(r: SlopeLike) -> Slope:
    r = Slope.of(r)
    if r.is_infinite or r.is_integer:
        raise SlopeError(f"r must be a non-integral rational, got {r}")
    return r


def farey_parents(r: SlopeLike) -> Tuple[Slope, Slope]:
    """The Farey neighbours of r with smallest denominators, left < r < right."""
    r = _check_r(r)
    q, p = r.numerator, r.denominator
    b = pow(q, -1, p)
    a = (q * b - 1) // p
    return Slope(a, b), Slope(q - a, p - b)


@dataclass(frozen=True)
class FundamentalIntervals:
    """I(r;n) = [lo, r1) u [r2, hi]; the closed union is [lo, r1] u [r2, hi]."""

    lo: Slope
    r1: Slope
    r2: Slope
    hi: Slope
    excluded_endpoint: Slope
    convention: str

    @property
    def closed_union(self):
        return ((self.lo, self.r1), (self.r2, self.hi))

    def contains(self, s: SlopeLike) -> bool:
        s = Slope.of(s)
        if s.is_infinite:
            return False
        return (self.lo <= s < self.r1) or (self.r2 <= s <= self.hi)

    def in_closure(self, s: SlopeLike) -> bool:
        s = Slope.of(s)
        if s.is_infinite:
            return False
        return (self.lo <= s <= self.r1) or (self.r2 <= s <= self.hi)

    def first(self, s: SlopeLike) -> bool:
        s = Slope.of(s)
        return not s.is_infinite and self.lo <= s < self.r1

    def second(self, s: SlopeLike) -> bool:
        s = Slope.of(s)
        return not s.is_infinite and self.r2 <= s <= self.hi

    def __str__(self):
        return f"[{self.lo},{self.r1}] u [{self.r2},{self.hi}]"

    def to_json(self):
        return {
            "closed": [[str(self.lo), str(self.r1)], [str(self.r2), str(self.hi)]],
            "half_open": f"[{self.lo},{self.r1}) u [{self.r2},{self.hi}]",
            "excluded_endpoint": str(self.excluded_endpoint),
            "convention": self.convention,
        }


def _fan_indices(r: Slope, two_n: int) -> Tuple[int, int, str]:
    frac = Slope(r.numerator % r.denominator, r.denominator)
    if frac.numerator == 1:
        # r = 1/p: I_1 = [0, [p, 2n-2]), I_2 = [[p-1, 2], 1]
        return two_n - 2, 1, "torus"
    i = (two_n - 1) // 2
    return i, two_n - 1 - i, "balanced"


def fundamental_intervals(r: SlopeLike, n) -> FundamentalIntervals:
    """Boundary trace of the fundamental domain R of <Gamma_inf, C_r(2n)>.

    R is cut out by the vertical edges at floor(r), floor(r)+1 and by the
    edges (r, r1), (r, r2) where r1 (left of r) and r2 (right of r) are
    Farey neighbours of r that are 2n fan steps apart through the side of
    infinity. For r = 1/p (mod 1) the endpoints are [p, 2n-2] and [p-1, 2];
    otherwise the 2n steps are split as evenly as possible around the
    parents of r, the larger half on the right.
    """
    r = _check_r(r)
    two_n = _two_n(n)
    q, p = r.numerator, r.denominator
    left, right = farey_parents(r)
    i, j, convention = _fan_indices(r, two_n)
    r1 = Slope(left.numerator + i * q, left.denominator + i * p)
    r2 = Slope(right.numerator + j * q, right.denominator + j * p)
    base = q // p
    return FundamentalIntervals(Slope(base, 1), r1, r2, Slope(base + 1, 1), r1, convention)


@dataclass(frozen=True)
class NormalizationResult:
    s: Slope
    s0: Slope
    witness: Tuple[FareyAutomorphism, ...]

    @property
    def steps(self) -> int:
        return len(self.witness)

    def to_json(self):
        return {
            "s": str(self.s),
            "s0": str(self.s0),
            "witness": [g.to_json() for g in self.witness],
            "steps": self.steps,
        }


@dataclass(frozen=True)
class HeckoidContext:
    """Immutable data for the even (or odd, for interval inspection) Heckoid group H(r;n)."""

    r: Slope
    n: Fraction
    parabolic: FareyAutomorphism
    intervals: FundamentalIntervals
    budget: int = 10**6

    @classmethod
    def create(cls, r: SlopeLike, n, budget: int = 10**6) -> "HeckoidContext":
        r = _check_r(r)
        two_n = _two_n(n)
        iv = fundamental_intervals(r, Fraction(two_n, 2))
        gen = parabolic_generator(r, Fraction(two_n, 2), iv)
        return cls(r, Fraction(two_n, 2), gen, iv, budget)

    @property
    def is_even(self) -> bool:
        return self.n.denominator == 1

    @property
    def offset(self) -> int:
        return self.intervals.lo.numerator

    def generators(self) -> List[FareyAutomorphism]:
        """Reflections at the strip walls plus the parabolic and its inverse."""
        k = self.offset
        return [
            gamma_infinity_generator(k),
            gamma_infinity_generator(k + 1),
            self.parabolic,
            self.parabolic.inverse(),
        ]

    def in_fundamental_set(self, s: SlopeLike) -> bool:
        s = Slope.of(s)
        return s.is_infinite or s == self.r or self.intervals.contains(s)

    def normalize(self, s: SlopeLike) -> NormalizationResult:
        return normalize(s, self)


def parabolic_generator(r: SlopeLike, n, intervals: Optional[FundamentalIntervals] = None) -> FareyAutomorphism:
    """The 2n-th power of the primitive parabolic at r that sends r1 to r2."""
    r = _check_r(r)
    two_n = _two_n(n)
    iv = intervals or fundamental_intervals(r, n)
    for k in (two_n, -two_n):
        g = _parabolic_power(r, k)
        if g(iv.r1) == iv.r2:
            return g
    raise AssertionError(f"no 2n-step parabolic at {r} maps {iv.r1} to {iv.r2}")


def _to_cusp_chart(r: Slope) -> FareyAutomorphism:
    """An SL(2,Z) map sending r to infinity."""
    q, p = r.numerator, r.denominator
    # (x, y; p, -q) with x q + y p = -1
    _, u, v = _egcd(q, p)
    return FareyAutomorphism(-u, -v, p, -q)


def _egcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def normalize(s: SlopeLike, ctx: HeckoidContext) -> NormalizationResult:
    """Move s into I(r;n) u {inf, r} by alternating Gamma_inf and C_r(2n) moves.

    The witness lists the automorphisms in the order they were applied.
    """
    s = Slope.of(s)
    iv = ctx.intervals
    K = ctx.offset
    r = ctx.r
    chart = _to_cusp_chart(r)
    w1, w2 = chart(iv.r1).fraction(), chart(iv.r2).fraction()
    tau = w2 - w1
    cur = s
    witness: List[FareyAutomorphism] = []
    for _ in range(ctx.budget):
        if ctx.in_fundamental_set(cur):
            return NormalizationResult(s, cur, tuple(witness))
        x = cur.fraction()
        if not (K <= x <= K + 1):
            shift = 2 * ((x - K) // 2)
            if shift:
                g = translation(-int(shift))
                witness.append(g)
                cur = g(cur)
                x = cur.fraction()
            if x > K + 1:
                g = gamma_infinity_generator(K + 1)
                witness.append(g)
                cur = g(cur)
            continue
        # cur lies in the gap [r1, r2) minus r, which C_r(2n) moves onto the side of infinity
        t = (chart(cur).fraction() - w1) / tau
        g = _gap_move(ctx, 1 - _ceil(t))
        witness.append(g)
        cur = g(cur)
    raise NormalizationBudgetExceeded(f"normalizing {s} did not finish in {ctx.budget} steps")


def _gap_move(ctx: HeckoidContext, k: int) -> FareyAutomorphism:
    """parabolic^k as a matrix: I + k (P - I)."""
    P = ctx.parabolic
    return FareyAutomorphism(1 + k * (P.a - 1), k * P.b, k * P.c, 1 + k * (P.d - 1))


def in_orbit_of_infinity(s: SlopeLike, ctx: HeckoidContext) -> bool:
    return normalize(s, ctx).s0.is_infinite


def orbit_search(s: SlopeLike, ctx: HeckoidContext, max_nodes: int = 20000, max_height: Optional[int] = None):
    """Best-first search of the orbit of s by height, over the raw generators.

    Independent of ``normalize``: it only uses the generators and membership in
    the fundamental set. Returns (representatives found, nodes expanded).
    """
    s = Slope.of(s)
    gens = ctx.generators() + [translation(2), translation(-2)]
    if max_height is None:
        max_height = 10**6
    seen = {s}
    heap = [(s.height(), 0, s)]
    found = set()
    counter = 0
    expanded = 0
    while heap and expanded < max_nodes:
        _, _, cur = heapq.heappop(heap)
        expanded += 1
        if ctx.in_fundamental_set(cur):
            found.add(cur)
            # fundamental points are still expanded so that identifications would show up
        for g in gens:
            nxt = g(cur)
            if nxt in seen or nxt.height() > max_height:
                continue
            seen.add(nxt)
            counter += 1
            heapq.heappush(heap, (nxt.height(), counter, nxt))
    return found, expanded
