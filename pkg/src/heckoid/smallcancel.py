"""Symmetrized relator sets, pieces, the conditions C(p) and T(q), and a
Dehn-style rewriting engine for the upper presentation <a, b | u_r^n>.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .farey import HeckoidContext
from .presentation import UpperPresentation, relator as make_relator, s1_s2_decomposition
from .rational import Slope, SlopeLike, to_continued_fraction
from .presentation import riley_word
from .word import (
    CyclicSequence,
    contains_subsequence,
    cyclic_s_sequence,
    cyclically_reduce,
    free_reduce,
    inverse,
    is_cyclically_reduced,
    rotate,
    s_sequence,
)


class SearchBudgetExceeded(RuntimeError):
    pass


def _lcp(x: str, y: str) -> int:
    n = min(len(x), len(y))
    i = 0
    while i < n and x[i] == y[i]:
        i += 1
    return i


class SymmetrizedRelatorSet:
    """All cyclic permutations of w and w^-1, as a set of distinct words."""

    def __init__(self, w: str, source: Optional[UpperPresentation] = None):
        if not w or not is_cyclically_reduced(w):
            raise ValueError(f"relator {w!r} must be non-empty and cyclically reduced")
        self.relator = w
        self.source = source
        elems = set()
        for x in (w, inverse(w)):
            for k in range(len(x)):
                elems.add(rotate(x, k))
        self.elements: Tuple[str, ...] = tuple(sorted(elems))
        self.length = len(w)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._by_first: Dict[str, List[str]] = {}
        for e in self.elements:
            self._by_first.setdefault(e[0], []).append(e)
        # longest piece that is a prefix of each element: max lcp with its sorted neighbours
        els = self.elements
        mp = []
        for i, e in enumerate(els):
            best = 0
            if i > 0:
                best = _lcp(e, els[i - 1])
            if i + 1 < len(els):
                best = max(best, _lcp(e, els[i + 1]))
            mp.append(best)
        self._max_piece = dict(zip(els, mp))

    @classmethod
    def from_presentation(cls, pres: UpperPresentation) -> "SymmetrizedRelatorSet":
        return cls(pres.relator, pres)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, w: str) -> bool:
        return w in self._index

    def __iter__(self):
        return iter(self.elements)

    @property
    def count_with_multiplicity(self) -> int:
        """2|w|: cyclic permutations of w and w^-1 counted by position."""
        return 2 * self.length

    def max_piece(self, element: str) -> int:
        return self._max_piece[element]

    def max_piece_prefix(self, v: str) -> int:
        """Length of the longest prefix of v shared by two distinct elements."""
        els = self.elements
        i = bisect_left(els, v)
        # the elements sharing the longest prefixes with v are adjacent to its sort position
        cands = sorted((_lcp(v, els[j]) for j in range(max(0, i - 2), min(len(els), i + 2))), reverse=True)
        return cands[1] if len(cands) > 1 else 0

    def elements_starting(self, c: str) -> List[str]:
        return self._by_first.get(c, [])

    def locate(self, w: str) -> Optional[str]:
        """An element having w as a prefix, if any."""
        if not w:
            return self.elements[0]
        els = self.elements
        i = bisect_left(els, w)
        if i < len(els) and els[i].startswith(w):
            return els[i]
        return None


def symmetrize(pres) -> SymmetrizedRelatorSet:
    if isinstance(pres, UpperPresentation):
        return SymmetrizedRelatorSet.from_presentation(pres)
    return SymmetrizedRelatorSet(pres)


def relator_set(r: SlopeLike, n: int) -> SymmetrizedRelatorSet:
    return symmetrize(make_relator(r, n))


@dataclass
class PieceDictionary:
    pieces: frozenset
    max_piece_length: int

    def is_piece(self, b: str) -> bool:
        return b in self.pieces


def compute_pieces(R: SymmetrizedRelatorSet) -> PieceDictionary:
    pieces = set()
    for e in R.elements:
        for k in range(1, R.max_piece(e) + 1):
            pieces.add(e[:k])
    return PieceDictionary(frozenset(pieces), max((len(b) for b in pieces), default=0))


def min_factorization(w: str, R: SymmetrizedRelatorSet):
    """Fewest pieces whose product is visually w, with one such factorization.

    w must be a prefix of some element of R (equivalently a subword of one).
    Returns (math.inf, None) if some position admits no piece.
    """
    host = R.locate(w)
    if host is None:
        raise ValueError(f"{w!r} is not a subword of any element of R")
    L = len(w)
    reach = [R.max_piece(rotate(host, i)) if i < R.length else 0 for i in range(L)]
    INF = math.inf
    best = [INF] * (L + 1)
    back = [0] * (L + 1)
    best[0] = 0
    for i in range(L):
        if best[i] is INF:
            continue
        for j in range(i + 1, min(L, i + reach[i]) + 1):
            if best[i] + 1 < best[j]:
                best[j] = best[i] + 1
                back[j] = i
    if best[L] is INF:
        return INF, None
    parts, j = [], L
    while j:
        i = back[j]
        parts.append(w[i:j])
        j = i
    return best[L], parts[::-1]


def min_piece_count(w: str, R: SymmetrizedRelatorSet):
    return min_factorization(w, R)[0]


@dataclass
class ConditionReport:
    condition: str
    holds: bool
    witness: Optional[object] = None

    def to_json(self):
        return {"condition": self.condition, "holds": self.holds, "witness": self.witness}


def verify_C(R: SymmetrizedRelatorSet, bound: int) -> ConditionReport:
    """C(bound): no element of R is a product of fewer than ``bound`` pieces."""
    if bound < 2:
        raise ValueError("C(p) needs p >= 2")
    worst = None
    for e in R.elements:
        t, parts = min_factorization(e, R)
        if t < bound and (worst is None or t < worst[0]):
            worst = (t, e, parts)
    if worst is None:
        return ConditionReport(f"C({bound})", True)
    t, e, parts = worst
    return ConditionReport(f"C({bound})", False, {"element": e, "pieces": parts, "count": t})


def verify_T(R: SymmetrizedRelatorSet, q: int) -> ConditionReport:
    """T(q): for 3 <= t < q, every cycle w1..wt in R with no successive inverse
    pair has some product w_i w_{i+1} (indices mod t) reduced without cancellation.
    """
    by_ends: Dict[Tuple[str, str], List[str]] = {}
    for e in R.elements:
        by_ends.setdefault((e[0], e[-1]), []).append(e)
    classes = list(by_ends)
    for t in range(3, q):
        for combo in itertools.product(classes, repeat=t):
            # every product w_i w_{i+1} must cancel: last(w_i) = first(w_{i+1})^-1
            if any(combo[i][1] != combo[(i + 1) % t][0].swapcase() for i in range(t)):
                continue
            wit = _cycle_without_inverse_pairs([by_ends[c] for c in combo])
            if wit is not None:
                return ConditionReport(f"T({q})", False, {"elements": wit})
    return ConditionReport(f"T({q})", True)


def _cycle_without_inverse_pairs(pools) -> Optional[List[str]]:
    t = len(pools)

    def extend(chosen):
        i = len(chosen)
        if i == t:
            return chosen if chosen[-1] != inverse(chosen[0]) else None
        for w in pools[i]:
            if i and w == inverse(chosen[-1]):
                continue
            res = extend(chosen + [w])
            if res is not None:
                return res
        return None

    return extend([])


def verify_T4(R: SymmetrizedRelatorSet) -> ConditionReport:
    return verify_T(R, 4)


def metric_ratio(R: SymmetrizedRelatorSet) -> float:
    """max piece length / relator length (C'(lambda) holds for lambda above this)."""
    return max(R.max_piece(e) for e in R.elements) / R.length


@dataclass
class Rewrite:
    position: int
    element: str
    matched: str
    replacement: str

    def to_json(self):
        return [self.position, self.element, self.replacement]


def _dehn_step(w: str, R: SymmetrizedRelatorSet) -> Optional[Rewrite]:
    half = R.length / 2
    for i in range(len(w)):
        best = None
        for e in R.elements_starting(w[i]):
            l = _lcp(w[i:], e)
            if l > half and (best is None or l > best[0]):
                best = (l, e)
        if best is not None:
            l, e = best
            return Rewrite(i, e, e[:l], inverse(e[l:]))
    return None


def dehn_reduce(w: str, R: SymmetrizedRelatorSet, trace: Optional[list] = None, cyclic: bool = False) -> str:
    """Replace any subword that is more than half of an element of R by the
    inverse of the rest of that element, leftmost-longest first, until none remain.

    With ``cyclic`` the result is afterwards treated as a cyclic word (so the
    output is only conjugate to w); that is the form used to test triviality.
    """
    w = free_reduce(w)
    while True:
        step = _dehn_step(w, R)
        if step is None:
            if not cyclic:
                return w
            w = cyclically_reduce(w)
            found = _cyclic_dehn_step(w, R)
            if found is None:
                return w
            k, step = found
            w = rotate(w, k)
        if trace is not None:
            trace.append((w, step))
        i = step.position
        w = free_reduce(w[:i] + step.replacement + w[i + len(step.matched):])


def _cyclic_dehn_step(c: str, R: SymmetrizedRelatorSet):
    n = len(c)
    if not n:
        return None
    doubled = c + c
    half = R.length / 2
    for i in range(n):
        window = doubled[i : i + n]
        for e in R.elements_starting(window[0]):
            l = _lcp(window, e)
            if l > half:
                return i, Rewrite(0, e, e[:l], inverse(e[l:]))
    return None


def is_trivial(w: str, R: SymmetrizedRelatorSet) -> bool:
    return dehn_reduce(w, R, cyclic=True) == ""


def replay_rewrite(before: str, step: Rewrite, R: SymmetrizedRelatorSet) -> bool:
    """Check that a rewrite A x B -> A y^-1 B is undone by inserting x y in R.

    Inserting the element e = x y in front of y^-1 gives A e y^-1 B, which
    must freely reduce to the original word.
    """
    i, x = step.position, step.matched
    if before[i : i + len(x)] != x or step.element not in R or not step.element.startswith(x):
        return False
    y = step.element[len(x):]
    if step.replacement != inverse(y):
        return False
    A, B = before[:i], before[i + len(x):]
    return free_reduce(A + step.element + step.replacement + B) == free_reduce(before)


def conjugators(max_length: int):
    """Freely reduced words in length-lexicographic order (a < b < A < B)."""
    yield ""
    frontier = [""]
    for _ in range(max_length):
        nxt = []
        for g in frontier:
            for c in "abAB":
                if g and g[-1] == c.swapcase():
                    continue
                nxt.append(g + c)
        for g in nxt:
            yield g
        frontier = nxt


def bounded_conjugacy_search(u: str, v: str, R: SymmetrizedRelatorSet, max_conjugator: int, budget: Optional[int] = None):
    """Some g with |g| <= max_conjugator and g u g^-1 = v in the group, else None.

    None is not a proof of non-conjugacy. Exceeding ``budget`` candidate
    conjugators raises SearchBudgetExceeded.
    """
    v_inv = inverse(v)
    for count, g in enumerate(conjugators(max_conjugator)):
        if budget is not None and count >= budget:
            raise SearchBudgetExceeded(f"tried {budget} conjugators without a witness")
        if dehn_reduce(g + u + inverse(g) + v_inv, R) == "":
            return g
    return None


# --- Lemma-level checks against the piece structure ---------------------------------


def block_layout(r: SlopeLike):
    """Letter offsets of u_r = v1 v2 v3 v4 with S(v1) = S(v3) = S1, S(v2) = S(v4) = S2."""
    d = s1_s2_decomposition(r)
    u = riley_word(r).word
    bounds = [0]
    runs = s_sequence(u)
    idx = 0
    for block in (d.S1, d.S2, d.S1, d.S2):
        length = sum(runs[idx : idx + len(block)])
        if tuple(runs[idx : idx + len(block)]) != tuple(block):
            raise AssertionError(f"S(u_r) is not (S1, S2, S1, S2) for {r}")
        idx += len(block)
        bounds.append(bounds[-1] + length)
    return u, d, bounds


def maximal_piece_report(r: SlopeLike, n: int = 2) -> dict:
    """Check the piece structure of (u_r) against the v1 v2 v3 v4 block picture.

    Pieces are closed under taking subwords, so everything reduces to the
    maximal piece length at each cyclic position of u_r.
    """
    r = Slope.of(r)
    R = relator_set(r, n)
    u, d, bounds = block_layout(r)
    L = len(u)
    reach = [R.max_piece(rotate(u * n, i)) for i in range(L)]

    def is_piece_at(start: int, length: int) -> bool:
        return length <= reach[start % L]

    def piece_covers(start: int, end: int) -> bool:
        # some piece occupies the cyclic letters start .. end-1
        return is_piece_at(start, end - start)

    k = len(to_continued_fraction(r))
    b0, b1, b2, b3, b4 = bounds
    checks = {}
    if k == 1:
        blocks = [(b0, b2), (b2, b4)]  # v2 and v4 (v1, v3 are empty)
        checks["a"] = not any(
            any(piece_covers(s, e) for s in range(e - L, s0 + 1)) for s0, e in blocks
        )
        # a piece v_{2e} v_{4b} must contain the two letters around the junction
        checks["b"] = not piece_covers(b2 - 1, b2 + 1) and not piece_covers(b4 - 1, b4 + 1)
        ok = True
        for s0, e in blocks:
            size = e - s0
            for t in range(1, size):
                ok &= is_piece_at(s0, t) and is_piece_at(e - t, t)
        checks["c"] = ok
    else:
        blocks = [(b0, b1), (b2, b3)]  # v1 and v3
        checks["a"] = not any(
            any(piece_covers(s, e) for s in range(e - L, s0 + 1)) for s0, e in blocks
        )
        checks["b"] = not piece_covers(b1 - 1, b2 + 1) and not piece_covers(b3 - 1, b4 + 1)
        ok = True
        v1, v3 = b1 - b0, b3 - b2
        # longest v1e v2, v2 v3b, v3e v4, v4 v1b
        if v1 >= 2:
            ok &= piece_covers(b0 + 1, b2) and piece_covers(b3, b4 + v1 - 1)
        if v3 >= 2:
            ok &= piece_covers(b1, b3 - 1) and piece_covers(b2 + 1, b4)
        checks["c"] = ok
    return {"slope": str(r), "k": k, "checks": checks, "holds": all(checks.values())}


def _block_pattern(d, n: int, first: str):
    pair = (d.S1, d.S2) if first == "S1" else (d.S2, d.S1)
    return tuple(x for _ in range(2 * n - 1) for block in pair for x in block)


def _contains_w_prime(runs: Sequence[int], X: tuple, Y: tuple) -> bool:
    """Does a word with S-sequence ``runs`` contain w' with S(w') = (X, l) or (l, Y)?"""
    T = len(runs)
    for j in range(T):
        # (X, l): first block may be a tail of runs[j]
        if j + len(X) < T and runs[j] >= X[0] and tuple(runs[j + 1 : j + len(X)]) == X[1:]:
            return True
        # (l, Y): last block may be a head of runs[j + len(Y)]
        if j + len(Y) < T and tuple(runs[j + 1 : j + len(Y)]) == Y[:-1] and runs[j + len(Y)] >= Y[-1]:
            return True
    return False


def maximal_piece2_report(r: SlopeLike, n: int) -> dict:
    """Pieces of (u_r^n): the full word needs >= 4n pieces, and every subword
    needing exactly 4n - 1 contains w' with S(w') = ((2n-1)<S1,S2>, l) or (l, (2n-1)<S2,S1>).
    """
    r = Slope.of(r)
    R = relator_set(r, n)
    u = riley_word(r).word
    d = s1_s2_decomposition(r)
    W = u * n
    L = len(W)
    full = min(min_piece_count(e, R) for e in R.elements)
    X = _block_pattern(d, n, "S1")
    Y = _block_pattern(d, n, "S2")
    period = len(u)
    reach = [R.max_piece(rotate(W, i)) for i in range(L)]
    violations = []
    tested = 0
    doubled = W + W
    for start in range(period):
        best = [math.inf] * (L + 1)
        best[0] = 0
        for i in range(L):
            if best[i] is math.inf:
                continue
            for j in range(i + 1, min(L, i + reach[(start + i) % L]) + 1):
                best[j] = min(best[j], best[i] + 1)
        for length in range(1, L + 1):
            if best[length] == 4 * n - 1:
                tested += 1
                sub = doubled[start : start + length]
                if not _contains_w_prime(s_sequence(sub), X, Y):
                    violations.append(sub)
    return {
        "slope": str(r),
        "n": n,
        "min_pieces_full": full,
        "part1": full >= 4 * n,
        "subwords_tested": tested,
        "part2": not violations,
        "violations": violations[:3],
        "holds": full >= 4 * n and not violations,
    }


# --- Pattern predicates for r = 1/p --------------------------------------------------


def _cs(s: Slope) -> CyclicSequence:
    return cyclic_s_sequence(riley_word(s).word, allow_single_sign=True)


def _has_outside_pattern(cs: CyclicSequence, p: int, n: int) -> bool:
    """(p+c, d<p>, p+c') with c, c' >= 1 and 0 <= d <= 2n-4."""
    runs = cs.runs
    T = len(runs)
    for j in range(T):
        if runs[j] <= p:
            continue
        for d in range(0, 2 * n - 3):
            if d + 2 > T:
                break
            mid = [runs[(j + 1 + i) % T] for i in range(d)]
            if all(x == p for x in mid) and runs[(j + 1 + d) % T] > p:
                return True
    return False


def forbidden_pattern_report(s: SlopeLike, ctx: HeckoidContext) -> dict:
    """Evaluate the four pattern statements for r = 1/p on CS(s), s in [0, 1]."""
    s = Slope.of(s)
    r = ctx.r
    if r.numerator != 1 or not ctx.is_even:
        raise ValueError("pattern report needs an even context with r = 1/p")
    if s.is_infinite or not (0 <= s.numerator <= s.denominator):
        raise ValueError(f"s must lie in [0, 1], got {s}")
    p, n = r.denominator, int(ctx.n)
    iv = ctx.intervals
    cs = _cs(s)
    in_I1, in_I2 = iv.first(s), iv.second(s)
    in_I1_small = s.numerator == 0  # I_1(1/p) = {0}
    in_I2_small = s >= Slope(1, p - 1)  # I_2(1/p) = [1/(p-1), 1]
    report = {
        "s": str(s),
        "cs": list(cs.runs),
        "degenerate_cs": s.numerator == 0,
        "membership": {
            "I1(1/p;n)": in_I1,
            "I2(1/p;n)": in_I2,
            "I1(1/p)": in_I1_small,
            "I2(1/p)": in_I2_small,
        },
        "lemmas": {},
    }

    def record(name, applies, holds):
        report["lemmas"][name] = {"applies": applies, "holds": holds if applies else None}

    record("connection", in_I1 or in_I2, not contains_subsequence(cs, (p,) * (2 * n - 2)))
    record(
        "inside-orbit",
        (in_I1_small or in_I2_small) and s.numerator != 0,
        all(x < p for x in cs.runs),
    )
    record("outside-orbit", in_I1 and not in_I1_small, _has_outside_pattern(cs, p, n))
    record(
        "outside-orbit2",
        in_I2 and not in_I2_small,
        contains_subsequence(cs, (p - 1, p, p - 1)) and not contains_subsequence(cs, (p, p)),
    )
    report["violations"] = [k for k, v in report["lemmas"].items() if v["applies"] and not v["holds"]]
    return report
