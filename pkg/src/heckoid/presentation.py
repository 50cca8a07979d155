"""Riley's word u_r, the upper presentation <a, b | u_r^n>, and the
sequence invariants S(r), CS(r), T(r), CT(r) with their (S1, S2, S1, S2) split.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass
from typing import Tuple

from .rational import (
    ContinuedFraction,
    Slope,
    SlopeError,
    SlopeLike,
    from_continued_fraction,
    to_continued_fraction,
)
from .word import (
    CyclicSequence,
    contains_linear,
    cyclic_s_sequence,
    inverse,
    s_sequence,
)


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class SlopeWord:
    slope: Slope
    word: str
    hat_word: str


@dataclass(frozen=True)
class UpperPresentation:
    r: Slope
    n: int
    relator: str

    def __str__(self):
        return f"<a, b | ({riley_word(self.r).word})^{self.n}>"


@dataclass(frozen=True)
class SlopeDecomposition:
    S1: tuple
    S2: tuple

    def sequence(self) -> tuple:
        return self.S1 + self.S2 + self.S1 + self.S2


def riley_word(s: SlopeLike) -> SlopeWord:
    """u_{q/p} from the signs eps_i = (-1)^floor(iq/p), 1 <= i <= p-1.

    The formula is valid for any coprime q, p with p >= 1; u_{1/0} is empty.
    """
    s = Slope.of(s)
    if s.is_infinite:
        return SlopeWord(s, "", "")
    return _riley_word(s.numerator, s.denominator)


@lru_cache(maxsize=1 << 14)
def _riley_word(q: int, p: int) -> SlopeWord:
    s = Slope(q, p)
    hat = []
    for i in range(1, p):
        gen = "b" if i % 2 == 1 else "a"
        hat.append(gen if (i * q // p) % 2 == 0 else gen.upper())
    hat = "".join(hat)
    if p % 2 == 1:
        middle = "b" if q % 2 == 0 else "B"
    else:
        middle = "A"
    return SlopeWord(s, "a" + hat + middle + inverse(hat), hat)


def _unit_slope(r: SlopeLike, allow_one=True) -> Slope:
    r = Slope.of(r)
    if r.is_infinite or r.numerator <= 0 or r.numerator > r.denominator:
        raise SlopeError(f"slope must satisfy 0 < r <= 1, got {r}")
    if not allow_one and r.numerator == r.denominator:
        raise SlopeError(f"slope must satisfy 0 < r < 1, got {r}")
    return r


def slope_s_sequence(r: SlopeLike, cyclic: bool = False):
    r = _unit_slope(r)
    u = riley_word(r).word
    return cyclic_s_sequence(u) if cyclic else s_sequence(u)


def _cf_k2(r: SlopeLike) -> Tuple[Slope, ContinuedFraction]:
    r = _unit_slope(r)
    cf = to_continued_fraction(r)
    if len(cf) < 2:
        raise PresentationError(f"{r} = {cf} has a one-term continued fraction; T(r) is undefined")
    return r, cf


def t_sequence(r: SlopeLike) -> tuple:
    """Run counts of the majority term in S(r); requires k >= 2."""
    r, cf = _cf_k2(r)
    m = cf[0]
    seq = slope_s_sequence(r)
    if cf[1] == 1:
        # S = (t1<m+1>, m, t2<m+1>, m, ..., ts<m+1>, m)
        runs, count = [], 0
        for x in seq:
            if x == m + 1:
                count += 1
            elif x == m:
                if count == 0:
                    raise PresentationError(f"S({r}) has consecutive m's")
                runs.append(count)
                count = 0
            else:
                raise PresentationError(f"S({r}) has a term outside {{m, m+1}}")
        if count:
            raise PresentationError(f"S({r}) does not end with m")
    else:
        # S = (m+1, t1<m>, m+1, t2<m>, ..., m+1, ts<m>)
        runs = []
        for x in seq:
            if x == m + 1:
                if runs and runs[-1] == 0:
                    raise PresentationError(f"S({r}) has consecutive (m+1)'s")
                runs.append(0)
            elif x == m:
                if not runs:
                    raise PresentationError(f"S({r}) does not begin with m+1")
                runs[-1] += 1
            else:
                raise PresentationError(f"S({r}) has a term outside {{m, m+1}}")
        if runs and runs[-1] == 0:
            raise PresentationError(f"S({r}) does not end with m")
    return tuple(runs)


def cyclic_t_sequence(r: SlopeLike) -> CyclicSequence:
    return CyclicSequence(t_sequence(r))


def reduced_slope(r: SlopeLike) -> Slope:
    """The slope r~ with CS(r~) = CT(r)."""
    r, cf = _cf_k2(r)
    terms = cf.terms
    if terms[1] == 1:
        return from_continued_fraction(terms[2:])
    return from_continued_fraction((terms[1] - 1,) + terms[2:])


def _is_palindrome(seq) -> bool:
    return tuple(seq) == tuple(reversed(seq))


def decomposition_candidates(r: SlopeLike):
    """Every split S(r) = (S1, S2, S1, S2) meeting all four conditions on S1, S2."""
    r = _unit_slope(r, allow_one=False)
    cf = to_continued_fraction(r)
    m = cf[0]
    seq = slope_s_sequence(r)
    q = len(seq) // 2
    if len(seq) % 2 or seq[:q] != seq[q:]:
        return []
    half = seq[:q]
    cs = CyclicSequence(seq)
    found = []
    splits = [0] if len(cf) == 1 else range(1, q)
    for j in splits:
        S1, S2 = half[:j], half[j:]
        if not S2 or not (_is_palindrome(S1) and _is_palindrome(S2)):
            continue
        if S1 and (S1[0] != m + 1 or S1[-1] != m + 1):
            continue
        if S2[0] != m or S2[-1] != m:
            continue
        if S1 and cs.count(S1) != 2:
            continue
        if cs.count(S2) != 2:
            continue
        found.append(SlopeDecomposition(S1, S2))
    return found


def decomposition_by_recursion(r: SlopeLike) -> SlopeDecomposition:
    """Build (S1, S2) from the decomposition (T1, T2) of the reduced slope."""
    r = _unit_slope(r, allow_one=False)
    terms = to_continued_fraction(r).terms
    return _recursive_split(terms)


def _recursive_split(terms) -> SlopeDecomposition:
    k = len(terms)
    m = terms[0]
    if k == 1:
        return SlopeDecomposition((), (m,))
    if k == 2:
        return SlopeDecomposition((m + 1,), (m,) * (terms[1] - 1))
    if terms[1] == 1 and k == 3:
        return SlopeDecomposition((m + 1,) * terms[2], (m,))
    if terms[1] == 1:
        tilde = _recursive_split(terms[2:])
        run, sep = m + 1, m
    else:
        tilde = _recursive_split((terms[1] - 1,) + tuple(terms[2:]))
        run, sep = m, m + 1
    T1, T2 = tilde.S1, tilde.S2
    if terms[1] == 1:
        # S1 = (t1<m+1>, m, ..., m, t_s1<m+1>), S2 = (m, t<m+1>, m, ..., t_s2<m+1>, m)
        S1 = _interleave(T1, run, sep, lead=False, trail=False)
        S2 = _interleave(T2, run, sep, lead=True, trail=True)
    else:
        # S1 = (m+1, t<m>, m+1, ..., t_s2<m>, m+1), S2 = (t1<m>, m+1, ..., m+1, t_s1<m>)
        S1 = _interleave(T2, run, sep, lead=True, trail=True)
        S2 = _interleave(T1, run, sep, lead=False, trail=False)
    return SlopeDecomposition(S1, S2)


def _interleave(counts, run_value, sep, lead, trail) -> tuple:
    out = [sep] if lead else []
    for i, t in enumerate(counts):
        if i:
            out.append(sep)
        out.extend([run_value] * t)
    if trail:
        out.append(sep)
    return tuple(out)


def s1_s2_decomposition(r: SlopeLike) -> SlopeDecomposition:
    """The split S(r) = (S1, S2, S1, S2); the direct split and the recursion must agree."""
    direct = decomposition_candidates(r)
    recursive = decomposition_by_recursion(r)
    if recursive not in direct:
        raise PresentationError(
            f"direct split {direct} and recursion {recursive} disagree for {Slope.of(r)}"
        )
    return recursive


def recover_slope(cs) -> Slope:
    """q/p from CS = <<S1, S2, S1, S2>>: p = sum of S1 and S2, q = |S1| + |S2|."""
    cs = cs if isinstance(cs, CyclicSequence) else CyclicSequence(cs)
    runs = cs.runs
    if not runs or len(runs) % 2:
        raise PresentationError(f"{cs!r} does not have the shape <<S1, S2, S1, S2>>")
    q, p2 = len(runs) // 2, sum(runs)
    if p2 % 2 or runs[:q] != runs[q:] or math.gcd(q, p2 // 2) != 1 or q > p2 // 2:
        raise PresentationError(f"{cs!r} does not have the shape <<S1, S2, S1, S2>>")
    s = Slope(q, p2 // 2)
    if slope_s_sequence(s, cyclic=True) != cs:
        raise PresentationError(f"{cs!r} is not the cyclic S-sequence of any slope")
    return s


def relator(r: SlopeLike, n: int) -> UpperPresentation:
    r = _unit_slope(r, allow_one=False)
    if int(n) != n or n < 2:
        raise PresentationError(f"n must be an integer >= 2, got {n}")
    n = int(n)
    return UpperPresentation(r, n, riley_word(r).word * n)


def check_corollary_patterns(r: SlopeLike) -> dict:
    """Which of (m+1, m+1) in S1 / (m, m) in S2 applies to r, and whether it holds."""
    r, cf = _cf_k2(r)
    m = cf[0]
    d = s1_s2_decomposition(r)
    if cf[1] == 1:
        case, pattern, block = "m2=1", (m + 1, m + 1), d.S1
    elif len(cf) == 2 and cf[1] == 2:
        return {"slope": str(r), "case": "r=[m,2]", "pattern": None, "applies": False, "holds": True}
    else:
        case, pattern, block = "m2>=2", (m, m), d.S2
    return {
        "slope": str(r),
        "case": case,
        "pattern": list(pattern),
        "applies": True,
        "holds": contains_linear(block, pattern),
    }


def slope_summary(r: SlopeLike) -> dict:
    r = _unit_slope(r)
    sw = riley_word(r)
    out = {"slope": str(r), "word": sw.word, "s_sequence": list(s_sequence(sw.word))}
    cf = to_continued_fraction(r)
    out["continued_fraction"] = list(cf.terms)
    out["t_sequence"] = list(t_sequence(r)) if len(cf) >= 2 else None
    if r.numerator < r.denominator:
        d = s1_s2_decomposition(r)
        out["s1"], out["s2"] = list(d.S1), list(d.S2)
    else:
        out["s1"] = out["s2"] = None
    return out
