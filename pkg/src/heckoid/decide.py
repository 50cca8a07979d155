"""Decisions about simple loops alpha_s in H(r;n): triviality, conjugacy,
peripherality and torsion, each with the evidence behind the answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .farey import HeckoidContext, NormalizationResult, normalize
from .kleinian import DEFAULT_TOL, RootFindingError, cached_representations, certify
from .presentation import riley_word
from .rational import Slope, SlopeLike
from .smallcancel import SearchBudgetExceeded, bounded_conjugacy_search, is_trivial, relator_set
from .word import cyclically_reduce, inverse

TRIVIAL = "Trivial"
TORSION_CORE = "TorsionCore"
REGULAR = "Regular"

DEHN_MAX_DENOMINATOR = 30


@dataclass
class LoopClass:
    input: Slope
    normalized: Slope
    kind: str
    normalization: NormalizationResult
    certificates: List[dict] = field(default_factory=list)

    def to_json(self):
        return {
            "s": str(self.input),
            "normalized": str(self.normalized),
            "kind": self.kind,
            "witness": [g.to_json() for g in self.normalization.witness],
            "certificates": list(self.certificates),
        }


def proven_scope(ctx: HeckoidContext) -> str:
    q, p = ctx.r.numerator % ctx.r.denominator, ctx.r.denominator
    return "this-paper" if q in (1, p - 1) else "sequel"


def _is_one_over_p(ctx: HeckoidContext) -> bool:
    return ctx.r.numerator % ctx.r.denominator == 1


def _reps(ctx: HeckoidContext, tol: float):
    if not ctx.is_even:
        return ()
    try:
        return cached_representations(ctx.r, int(ctx.n), tol)
    except RootFindingError:
        return ()


def classify(s: SlopeLike, ctx: HeckoidContext, dehn_max_denominator: int = DEHN_MAX_DENOMINATOR) -> LoopClass:
    s = Slope.of(s)
    res = normalize(s, ctx)
    s0 = res.s0
    if s0.is_infinite:
        kind = TRIVIAL
    elif s0 == ctx.r:
        kind = TORSION_CORE
    else:
        kind = REGULAR
    out = LoopClass(s, s0, kind, res)
    if ctx.is_even and _is_one_over_p(ctx) and not s.is_infinite and s.denominator <= dehn_max_denominator:
        R = relator_set(Slope(1, ctx.r.denominator), int(ctx.n))
        word = cyclically_reduce(riley_word(s).word)
        trivial = is_trivial(word, R)
        out.certificates.append(
            {"kind": "dehn-cross-check", "trivial": trivial, "agrees": trivial == (kind == TRIVIAL)}
        )
    return out


@dataclass
class Verdict:
    question: str
    s: Slope
    s_prime: Optional[Slope]
    answer: object
    normalized: List[Slope]
    scope: str
    certificates: List[dict] = field(default_factory=list)
    witnesses: List[NormalizationResult] = field(default_factory=list)

    def to_json(self):
        out = {
            "question": self.question,
            "s": str(self.s),
            "s_prime": None if self.s_prime is None else str(self.s_prime),
            self.question: self.answer,
            "normalized": [str(x) for x in self.normalized],
            "proven_scope": self.scope,
            "certificates": list(self.certificates),
            "witnesses": [w.to_json() for w in self.witnesses],
        }
        return out


def conjugate(
    s: SlopeLike,
    s_prime: SlopeLike,
    ctx: HeckoidContext,
    tol: float = DEFAULT_TOL,
    max_conjugator: int = 3,
    search_budget: int = 200,
) -> Verdict:
    """Whether alpha_s and alpha_s' are homotopic, i.e. u_s is conjugate to u_s'^{+-1}."""
    a, b = classify(s, ctx), classify(s_prime, ctx)
    same = a.normalized == b.normalized
    v = Verdict("conjugate", a.input, b.input, same, [a.normalized, b.normalized], proven_scope(ctx),
                witnesses=[a.normalization, b.normalization])
    if not same:
        if a.kind == REGULAR and b.kind == REGULAR:
            cert = certify("non-conjugate", [a.normalized, b.normalized], _reps(ctx, tol), tol)
            v.certificates.append(cert.to_json() if cert else {"kind": "non-conjugate", "inconclusive": True})
    elif ctx.is_even and not a.input.is_infinite and not b.input.is_infinite:
        R = relator_set(ctx.r, int(ctx.n))
        u = cyclically_reduce(riley_word(a.input).word)
        w = cyclically_reduce(riley_word(b.input).word)
        found = None
        try:
            for target, sign in ((w, 1), (inverse(w), -1)):
                g = bounded_conjugacy_search(u, target, R, max_conjugator, search_budget)
                if g is not None:
                    found = {"kind": "conjugator", "g": g, "exponent": sign}
                    break
        except SearchBudgetExceeded:
            found = {"kind": "conjugator", "budget_exceeded": True}
        v.certificates.append(found or {"kind": "conjugator", "found": False, "max_length": max_conjugator})
    return v


def is_peripheral(s: SlopeLike, ctx: HeckoidContext, tol: float = DEFAULT_TOL) -> Verdict:
    c = classify(s, ctx)
    answer = "not-applicable" if c.kind == TRIVIAL else False
    v = Verdict("peripheral", c.input, None, answer, [c.normalized], proven_scope(ctx),
                certificates=list(c.certificates), witnesses=[c.normalization])
    if c.kind == REGULAR:
        cert = certify("non-peripheral", [c.normalized], _reps(ctx, tol), tol)
        v.certificates.append(cert.to_json() if cert else {"kind": "non-peripheral", "inconclusive": True})
    return v


def is_torsion(s: SlopeLike, ctx: HeckoidContext, tol: float = DEFAULT_TOL) -> Verdict:
    c = classify(s, ctx)
    v = Verdict("torsion", c.input, None, c.kind == TORSION_CORE, [c.normalized], proven_scope(ctx),
                certificates=list(c.certificates), witnesses=[c.normalization])
    if c.kind == REGULAR:
        cert = certify("non-torsion", [c.normalized], _reps(ctx, tol), tol)
        v.certificates.append(cert.to_json() if cert else {"kind": "non-torsion", "inconclusive": True})
    return v


def is_trivial_loop(s: SlopeLike, ctx: HeckoidContext) -> Verdict:
    c = classify(s, ctx)
    return Verdict("trivial", c.input, None, c.kind == TRIVIAL, [c.normalized], proven_scope(ctx),
                   certificates=list(c.certificates), witnesses=[c.normalization])
