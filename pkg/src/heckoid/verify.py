"""Exhaustive property sweeps over slopes, one suite per lemma.

Each suite enumerates its cases in sorted order, checks them, and returns a
SuiteResult. Cases can be spread over HECKOID_WORKERS processes; results are
merged back in case order so the output does not depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .farey import HeckoidContext, in_orbit_of_infinity
from .presentation import (
    check_corollary_patterns,
    cyclic_t_sequence,
    decomposition_by_recursion,
    decomposition_candidates,
    reduced_slope,
    riley_word,
    slope_s_sequence,
)
from .rational import Slope, to_continued_fraction
from .smallcancel import (
    forbidden_pattern_report,
    is_trivial,
    maximal_piece2_report,
    maximal_piece_report,
    relator_set,
    verify_C,
    verify_T4,
)
from .word import CyclicWord, cyclically_reduce, is_alternating

DEFAULTS = {
    "properties": 200,
    "induction1": 200,
    "sequence": 200,
    "relation": 200,
    "corollary": 200,
    "connection": 100,
    "inside-orbit": 100,
    "outside-orbit": 100,
    "outside-orbit2": 100,
    "maximal-piece": 20,
    "small-cancellation": 20,
    "reformulation-crosscheck": 30,
}

PATTERN_PS = (2, 3, 4, 5, 6)


@dataclass
class SuiteResult:
    suite: str
    max_denom: int
    passed: int = 0
    failed: int = 0
    failures: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self, limit: int = 20):
        return {
            "suite": self.suite,
            "max_denom": self.max_denom,
            "passed": self.passed,
            "failed": self.failed,
            "failures": self.failures[:limit],
        }


def unit_slopes(max_denom: int):
    """q/p in lowest terms with 0 < q/p < 1 and p <= max_denom, sorted by (p, q)."""
    for p in range(2, max_denom + 1):
        for q in range(1, p):
            s = Slope(q, p)
            if s.denominator == p:
                yield s


def closed_unit_slopes(max_denom: int):
    """Every rational in [0, 1] with denominator <= max_denom, sorted by value."""
    seen = {Fraction(q, p) for p in range(1, max_denom + 1) for q in range(0, p + 1)}
    return [Slope.of(x) for x in sorted(seen)]


# --- per-case checks: each returns None on success or a short failure reason ---


def _check_properties(r: Slope) -> Optional[str]:
    q, p = r.numerator, r.denominator
    u = riley_word(r).word
    if len(u) != 2 * p:
        return f"|u_r| = {len(u)} != 2p"
    if not is_alternating(CyclicWord(u)):
        return "u_r is not cyclically alternating"
    cs = slope_s_sequence(r, cyclic=True)
    if len(cs) != 2 * q or sum(cs.runs) != 2 * p:
        return f"CS has {len(cs)} terms summing to {sum(cs.runs)}"
    cf = to_continued_fraction(r)
    m = cf[0]
    seq = slope_s_sequence(r)
    if len(cf) == 1:
        return None if seq == (m, m) else f"S = {seq} != (m, m)"
    if set(seq) - {m, m + 1}:
        return f"S has terms outside {{{m}, {m + 1}}}"
    if seq[0] != m + 1 or seq[-1] != m:
        return "S does not begin with m+1 and end with m"
    return None


def _check_induction1(r: Slope) -> Optional[str]:
    if len(to_continued_fraction(r)) < 2:
        return None
    rt = reduced_slope(r)
    if slope_s_sequence(rt, cyclic=True) != cyclic_t_sequence(r):
        return f"CS({rt}) != CT({r})"
    return None


def _check_sequence(r: Slope) -> Optional[str]:
    # decomposition_candidates enforces symmetry, boundary values and the two occurrences
    cands = decomposition_candidates(r)
    if not cands:
        return "no split S = (S1, S2, S1, S2) satisfies all four conditions"
    k = len(to_continued_fraction(r))
    if any((len(d.S1) == 0) != (k == 1) for d in cands):
        return "S1 empty does not match k = 1"
    return None


def _check_relation(r: Slope) -> Optional[str]:
    d = decomposition_by_recursion(r)
    if d not in decomposition_candidates(r):
        return f"recursion gives {d}, not a valid direct split"
    return None


def _check_corollary(r: Slope) -> Optional[str]:
    if len(to_continued_fraction(r)) < 2:
        return None
    rep = check_corollary_patterns(r)
    if rep["applies"] and not rep["holds"]:
        return f"pattern {rep['pattern']} missing ({rep['case']})"
    return None


def _check_maximal_piece(case) -> Optional[str]:
    r, n = case
    a = maximal_piece_report(r, n)
    if not a["holds"]:
        return f"piece structure: {a}"
    b = maximal_piece2_report(r, n)
    if not b["holds"]:
        return f"piece count: {b}"
    return None


def _check_small_cancellation(case) -> Optional[str]:
    r, n = case
    R = relator_set(r, n)
    c = verify_C(R, 4 * n)
    if not c.holds:
        return f"C({4 * n}) fails: {c.witness}"
    t = verify_T4(R)
    if not t.holds:
        return f"T(4) fails: {t.witness}"
    return None


def _pattern_check(name):
    def check(case) -> Optional[str]:
        p, n, s = case
        ctx = HeckoidContext.create(Slope(1, p), n)
        rep = forbidden_pattern_report(s, ctx)
        entry = rep["lemmas"][name]
        if entry["applies"] and not entry["holds"]:
            return f"CS = {rep['cs']}"
        return None

    return check


def _check_reformulation(case) -> Optional[str]:
    p, n, s = case
    ctx = HeckoidContext.create(Slope(1, p), n)
    R = relator_set(Slope(1, p), n)
    by_dehn = is_trivial(cyclically_reduce(riley_word(s).word), R)
    by_orbit = in_orbit_of_infinity(s, ctx)
    if by_dehn != by_orbit:
        return f"Dehn says trivial={by_dehn}, orbit says {by_orbit}"
    return None


# --- case generators ---


def _slope_cases(max_denom, n_values):
    return list(unit_slopes(max_denom))


def _rn_cases(max_denom, n_values):
    return [(r, n) for r in unit_slopes(max_denom) for n in n_values]


def _pattern_cases(max_denom, n_values):
    ss = closed_unit_slopes(max_denom)
    return [(p, n, s) for p in PATTERN_PS for n in n_values for s in ss]


def _reformulation_cases(max_denom, n_values):
    ss = closed_unit_slopes(max_denom)
    return [(p, n, s) for p in (2, 3, 4) for n in n_values for s in ss]


SUITES: Dict[str, Tuple[Callable, Callable, Tuple[int, ...]]] = {
    "properties": (_slope_cases, _check_properties, ()),
    "induction1": (_slope_cases, _check_induction1, ()),
    "sequence": (_slope_cases, _check_sequence, ()),
    "relation": (_slope_cases, _check_relation, ()),
    "corollary": (_slope_cases, _check_corollary, ()),
    "connection": (_pattern_cases, _pattern_check("connection"), (2, 3)),
    "inside-orbit": (_pattern_cases, _pattern_check("inside-orbit"), (2, 3)),
    "outside-orbit": (_pattern_cases, _pattern_check("outside-orbit"), (2, 3)),
    "outside-orbit2": (_pattern_cases, _pattern_check("outside-orbit2"), (2, 3)),
    "maximal-piece": (_rn_cases, _check_maximal_piece, (2, 3, 4)),
    "small-cancellation": (_rn_cases, _check_small_cancellation, (2, 3, 4)),
    "reformulation-crosscheck": (_reformulation_cases, _check_reformulation, (2, 3)),
}


class UnknownSuite(KeyError):
    pass


def _describe(case) -> str:
    if isinstance(case, tuple):
        return ", ".join(str(x) for x in case)
    return str(case)


def _run_chunk(args):
    name, cases = args
    check = SUITES[name][1]
    out = []
    for case in cases:
        try:
            reason = check(case)
        except Exception as exc:  # a crash is a failed case, not a crashed sweep
            reason = f"{type(exc).__name__}: {exc}"
        out.append(reason)
    return out


def workers_from_env() -> int:
    try:
        return max(1, int(os.environ.get("HECKOID_WORKERS", "1")))
    except ValueError:
        return 1


def run_suite(name: str, max_denom: Optional[int] = None, n_values: Optional[Sequence[int]] = None,
              workers: Optional[int] = None) -> SuiteResult:
    if name not in SUITES:
        raise UnknownSuite(name)
    gen, _, default_ns = SUITES[name]
    max_denom = DEFAULTS[name] if max_denom is None else max_denom
    n_values = tuple(n_values) if n_values else default_ns
    cases = gen(max_denom, n_values)
    workers = workers or workers_from_env()
    if workers > 1 and len(cases) > 1:
        size = -(-len(cases) // (4 * workers))
        chunks = [cases[i : i + size] for i in range(0, len(cases), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reasons = [x for part in pool.map(_run_chunk, [(name, c) for c in chunks]) for x in part]
    else:
        reasons = _run_chunk((name, cases))
    res = SuiteResult(name, max_denom)
    for case, reason in zip(cases, reasons):
        if reason is None:
            res.passed += 1
        else:
            res.failed += 1
            res.failures.append({"case": _describe(case), "reason": reason})
    return res
