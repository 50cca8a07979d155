"""Command-line front end. JSON on stdout by default, tables with --table.

Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable, Dict, List, Optional

from . import decide, farey, kleinian, presentation, smallcancel, verify
from .rational import SlopeError, parse_slope, to_continued_fraction
from .word import WordError

SCHEMA = "heckoid/1"


class DomainError(Exception):
    pass


def _slope(text: str):
    try:
        return parse_slope(text)
    except (SlopeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _context(args) -> farey.HeckoidContext:
    if args.n < 2:
        raise DomainError(f"n must be >= 2, got {args.n}")
    return farey.HeckoidContext.create(args.r, args.n, budget=args.budget)


# --- command implementations: each returns a JSON-able dict ---


def cmd_word(args):
    sw = presentation.riley_word(args.s)
    return {"slope": str(args.s), "word": sw.word, "hat_word": sw.hat_word, "length": len(sw.word)}


def cmd_sseq(args):
    summary = presentation.slope_summary(args.s)
    summary["cyclic_s_sequence"] = list(presentation.slope_s_sequence(args.s, cyclic=True).runs)
    return summary


def cmd_decomp(args):
    d = presentation.s1_s2_decomposition(args.s)
    out = {"slope": str(args.s), "s1": list(d.S1), "s2": list(d.S2)}
    cf = to_continued_fraction(args.s)
    if len(cf) >= 2:
        out["corollary"] = presentation.check_corollary_patterns(args.s)
    out["recovered_slope"] = str(presentation.recover_slope(presentation.slope_s_sequence(args.s, cyclic=True)))
    return out


def cmd_tseq(args):
    rt = presentation.reduced_slope(args.s)
    return {
        "slope": str(args.s),
        "continued_fraction": list(to_continued_fraction(args.s).terms),
        "t_sequence": list(presentation.t_sequence(args.s)),
        "reduced_slope": str(rt),
        "reduced_continued_fraction": list(to_continued_fraction(rt).terms),
        "cyclic_s_sequence_of_reduced": list(presentation.slope_s_sequence(rt, cyclic=True).runs),
    }


def cmd_intervals(args):
    ctx = _context(args)
    iv = ctx.intervals
    out = {"r": str(ctx.r), "n": args.n}
    out.update(iv.to_json())
    out["parabolic"] = ctx.parabolic.to_json()
    out["parabolic_maps"] = [str(iv.r1), str(ctx.parabolic(iv.r1))]
    return out


def cmd_normalize(args):
    ctx = _context(args)
    out = {"r": str(ctx.r), "n": args.n, "results": []}
    for s in args.slopes:
        res = farey.normalize(s, ctx)
        out["results"].append(res.to_json())
    return out


def _verdict_list(fn, args, **kw):
    ctx = _context(args)
    return {"r": str(ctx.r), "n": args.n, "verdicts": [fn(s, ctx, **kw).to_json() for s in args.slopes]}


def cmd_trivial(args):
    return _verdict_list(decide.is_trivial_loop, args)


def cmd_conjugate(args):
    ctx = _context(args)
    v = decide.conjugate(args.s, args.s_prime, ctx, tol=args.tol)
    out = {"r": str(ctx.r), "n": args.n}
    out.update(v.to_json())
    return out


def cmd_peripheral(args):
    return _verdict_list(decide.is_peripheral, args, tol=args.tol)


def cmd_torsion(args):
    return _verdict_list(decide.is_torsion, args, tol=args.tol)


def cmd_smallcancel(args):
    R = smallcancel.relator_set(args.r, args.n)
    bound = args.bound or 4 * args.n
    return {
        "r": str(args.r),
        "n": args.n,
        "relator": R.relator,
        "elements": len(R),
        "elements_with_multiplicity": R.count_with_multiplicity,
        "C": smallcancel.verify_C(R, bound).to_json(),
        "T4": smallcancel.verify_T4(R).to_json(),
        "max_piece_ratio": smallcancel.metric_ratio(R),
        "full_relator_pieces": smallcancel.min_piece_count(R.relator, R),
        "maximal_piece": smallcancel.maximal_piece_report(args.r, args.n),
        "maximal_piece2": smallcancel.maximal_piece2_report(args.r, args.n),
    }


def cmd_pieces(args):
    R = smallcancel.relator_set(args.r, args.n)
    d = smallcancel.compute_pieces(R)
    out = {
        "r": str(args.r),
        "n": args.n,
        "piece_count": len(d.pieces),
        "max_piece_length": d.max_piece_length,
        "maximal_pieces": sorted(b for b in d.pieces if len(b) == d.max_piece_length),
    }
    if args.word:
        count, parts = smallcancel.min_factorization(args.word, R)
        out["factorization"] = {"word": args.word, "count": count if parts else None, "pieces": parts}
    if args.reduce:
        trace: list = []
        reduced = smallcancel.dehn_reduce(args.reduce, R, trace=trace)
        out["dehn"] = {
            "word": args.reduce,
            "reduced": reduced,
            "trivial": smallcancel.is_trivial(args.reduce, R),
            "rewrites": [step.to_json() for _, step in trace],
        }
    return out


def cmd_rep(args):
    if args.n < 2:
        raise DomainError(f"n must be >= 2, got {args.n}")
    poly = kleinian.trace_polynomial(args.r)
    orders = tuple(range(1, args.n)) if args.all_orders else (1,)
    reps = kleinian.solve_representations(args.r, args.n, tol=args.tol, orders=orders)
    out = {
        "r": str(args.r),
        "n": args.n,
        "trace_polynomial": list(poly),
        "trace_polynomial_text": kleinian.format_polynomial(poly),
        "representations": [],
    }
    for rep in reps:
        entry = rep.to_json()
        entry["traces"] = {str(s): _cplx(kleinian.trace_of_slope(s, rep)) for s in args.slopes}
        out["representations"].append(entry)
    if len(args.slopes) == 2:
        cert = kleinian.certify("non-conjugate", args.slopes, reps, args.tol)
        out["certificate"] = cert.to_json() if cert else {"kind": "non-conjugate", "inconclusive": True}
    elif len(args.slopes) == 1:
        out["certificates"] = []
        for kind in ("non-peripheral", "non-torsion"):
            cert = kleinian.certify(kind, args.slopes, reps, args.tol)
            out["certificates"].append(cert.to_json() if cert else {"kind": kind, "inconclusive": True})
    return out


def _cplx(z: complex):
    return [z.real, z.imag]


def cmd_verify(args):
    res = verify.run_suite(args.lemma, args.max_denom, args.n or None)
    out = res.to_json()
    out["seed"] = args.seed
    return out


COMMANDS: Dict[str, Callable] = {
    "word": cmd_word,
    "sseq": cmd_sseq,
    "decomp": cmd_decomp,
    "tseq": cmd_tseq,
    "intervals": cmd_intervals,
    "normalize": cmd_normalize,
    "trivial": cmd_trivial,
    "conjugate": cmd_conjugate,
    "peripheral": cmd_peripheral,
    "torsion": cmd_torsion,
    "smallcancel": cmd_smallcancel,
    "pieces": cmd_pieces,
    "rep": cmd_rep,
    "verify": cmd_verify,
}

# Library operations reached by each command, for the dispatch coverage test.
OPERATIONS = {
    "word": ["presentation.riley_word"],
    "sseq": ["presentation.slope_summary", "presentation.slope_s_sequence", "presentation.t_sequence"],
    "decomp": ["presentation.s1_s2_decomposition", "presentation.check_corollary_patterns", "presentation.recover_slope"],
    "tseq": ["presentation.t_sequence", "presentation.reduced_slope"],
    "intervals": ["farey.fundamental_intervals", "farey.parabolic_generator"],
    "normalize": ["farey.normalize"],
    "trivial": ["decide.classify", "decide.is_trivial_loop", "farey.in_orbit_of_infinity"],
    "conjugate": ["decide.conjugate", "kleinian.certify", "smallcancel.bounded_conjugacy_search"],
    "peripheral": ["decide.is_peripheral"],
    "torsion": ["decide.is_torsion"],
    "smallcancel": [
        "smallcancel.relator_set", "smallcancel.verify_C", "smallcancel.verify_T4",
        "smallcancel.metric_ratio", "smallcancel.min_piece_count",
        "smallcancel.maximal_piece_report", "smallcancel.maximal_piece2_report",
    ],
    "pieces": ["smallcancel.compute_pieces", "smallcancel.min_factorization", "smallcancel.dehn_reduce", "smallcancel.is_trivial"],
    "rep": ["kleinian.trace_polynomial", "kleinian.solve_representations", "kleinian.trace_of_slope", "kleinian.certify"],
    "verify": ["verify.run_suite", "smallcancel.forbidden_pattern_report"],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heckoid", description="Simple loops in even Heckoid groups H(r;n).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", action="store_true", help="human-readable table instead of JSON")
    common.add_argument("--tol", type=float, default=kleinian.DEFAULT_TOL, help="certificate tolerance")
    common.add_argument("--budget", type=_positive_int, default=10**6, help="normalization step budget")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    for name, help_text in [
        ("word", "Riley word u_s"),
        ("sseq", "S-sequence and related data of a slope"),
        ("decomp", "(S1, S2, S1, S2) decomposition"),
        ("tseq", "T-sequence and reduced slope"),
    ]:
        add(name, help_text).add_argument("s", type=_slope)

    p = add("intervals", "fundamental intervals I(r;n)")
    p.add_argument("r", type=_slope)
    p.add_argument("n", type=int)

    for name, help_text in [
        ("normalize", "move slopes into I(r;n) u {inf, r}"),
        ("trivial", "is alpha_s null-homotopic"),
        ("peripheral", "is alpha_s peripheral"),
        ("torsion", "is alpha_s torsion"),
    ]:
        p = add(name, help_text)
        p.add_argument("r", type=_slope)
        p.add_argument("n", type=int)
        p.add_argument("slopes", type=_slope, nargs="+")

    p = add("conjugate", "are alpha_s and alpha_s' homotopic")
    p.add_argument("r", type=_slope)
    p.add_argument("n", type=int)
    p.add_argument("s", type=_slope)
    p.add_argument("s_prime", type=_slope)

    p = add("smallcancel", "C(4n), T(4) and the piece lemmas for u_r^n")
    p.add_argument("r", type=_slope)
    p.add_argument("n", type=int)
    p.add_argument("--bound", type=int, default=None, help="check C(bound) instead of C(4n)")

    p = add("pieces", "piece dictionary, factorizations and Dehn reduction")
    p.add_argument("r", type=_slope)
    p.add_argument("n", type=int)
    p.add_argument("--word", default=None, help="factor this subword of a relator into pieces")
    p.add_argument("--reduce", default=None, help="Dehn-reduce this word")

    p = add("rep", "parabolic representations and trace certificates")
    p.add_argument("r", type=_slope)
    p.add_argument("n", type=int)
    p.add_argument("slopes", type=_slope, nargs="*")
    p.add_argument("--all-orders", action="store_true", help="also solve tr = 2cos(k pi/n) for 1 < k < n")

    p = add("verify", "run a lemma property suite")
    p.add_argument("lemma", choices=sorted(verify.SUITES))
    p.add_argument("--max-denom", type=_positive_int, default=None)
    p.add_argument("--n", type=int, action="append", default=None, help="restrict n (repeatable)")
    p.add_argument("--seed", type=int, default=0, help="recorded with the result; the suites are exhaustive")
    return parser


def _rows(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _rows(v, f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and any(isinstance(x, (dict, list)) for x in obj):
        for i, v in enumerate(obj):
            yield from _rows(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


def render_table(result: dict) -> str:
    rows = [(k, json.dumps(v) if not isinstance(v, str) else v) for k, v in _rows(result)]
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def render(command: str, result: dict, table: bool) -> str:
    if table:
        return render_table(result)
    payload = {"schema": SCHEMA, "command": command}
    payload.update(result)
    return json.dumps(payload, indent=2)


DOMAIN_ERRORS = (
    DomainError,
    SlopeError,
    WordError,
    presentation.PresentationError,
    farey.NormalizationBudgetExceeded,
    smallcancel.SearchBudgetExceeded,
    kleinian.RootFindingError,
    ValueError,
)


_NEGATIVE_SLOPE = re.compile(r"^-\d+(/\d+)?$")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    # argparse would read "-5/3" as an option; a leading space keeps it positional
    argv = [" " + a if _NEGATIVE_SLOPE.match(a) else a for a in argv]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = COMMANDS[args.command](args)
    except DOMAIN_ERRORS as exc:
        err = {"schema": SCHEMA, "command": args.command, "error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err, indent=2), file=sys.stderr)
        return 1
    print(render(args.command, result, args.table))
    if args.command == "verify" and result["failed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
