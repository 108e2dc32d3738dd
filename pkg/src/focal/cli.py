"""Command-line front end.

Exit codes: 0 success / provable / checked; 1 not provable / refuted /
check failed; 2 usage or syntax errors.  ``--format json-lines`` emits one
JSON record per result so runs can be scripted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import sexpr as S
from . import unfocused as u
from .admissible import RuleId, adm
from .cut import cut_neg, cut_pos, lsubst, rsubst
from .errors import CheckError, FocalError, ParseError
from .identity import expand_neg, expand_pos
from .kernel import (
    Ctx,
    NegHyp,
    SuspHyp,
    check_spine,
    check_term,
    check_value,
    print_term,
)
from .prover import SearchStats, count_derivations, kripke_refute, prove
from .syntax import (
    Down,
    INeg,
    SPos,
    Strategy,
    is_neg,
    is_pos,
    parse_pprop,
    parse_uprop,
    polarize,
    print_pprop,
    print_uprop,
)
from .translate import defocalize_spine, defocalize_term, defocalize_value, focalize

_STRATEGIES = {
    "neg": Strategy.ALL_NEG,
    "pos": Strategy.ALL_POS,
    "fullshift": Strategy.FULL_SHIFT,
}


def _error(msg: str) -> None:
    print(f"focal: error: {msg}", file=sys.stderr)


def _emit(args, record: dict, text: str) -> None:
    if args.format == "json-lines":
        print(json.dumps(record))
    else:
        print(text)


def _parse_ctx(args) -> Ctx:
    ctx = Ctx.empty()
    for entry in args.hyp or []:
        name, _, prop = entry.partition(":")
        if not prop:
            raise ParseError(0, {"name:prop"}, entry)
        a = parse_pprop(prop)
        if not is_neg(a):
            raise ParseError(0, {"negative proposition"}, prop)
        ctx = ctx.add(name.strip(), NegHyp(a))
    for entry in args.susp or []:
        name, _, prop = entry.partition(":")
        if not prop:
            raise ParseError(0, {"name:prop"}, entry)
        a = parse_pprop(prop)
        if not is_pos(a):
            raise ParseError(0, {"positive proposition"}, prop)
        ctx = ctx.add(name.strip(), SuspHyp(a))
    return ctx


def _goal_succedent(text: str):
    """A --type value: sexp succedent form, or a bare polarized proposition
    (negatives become inversion goals, positives stable goals)."""
    stripped = text.strip()
    if stripped.startswith("(") and stripped.split("(", 1)[1].split()[0].rstrip(")") in (
        "rfoc", "spos", "ineg", "suspneg",
    ):
        return S.succ_from_sexp(S.read_sexp(stripped))
    a = parse_pprop(stripped)
    return INeg(a) if is_neg(a) else SPos(a)


def _read_term(text: str):
    if text == "-":
        text = sys.stdin.read()
    return S.term_from_sexp(S.read_sexp(text))


def _term_out(args, term) -> str:
    return S.write_sexp(S.term_to_sexp(term)) if args.format == "sexp" else print_term(term)


# -- subcommand bodies --------------------------------------------------------

def _cmd_parse(args) -> int:
    if args.polarized:
        p = parse_pprop(args.prop)
        text = S.write_sexp(S.pprop_to_sexp(p)) if args.format == "sexp" else print_pprop(p)
        sort = "positive" if is_pos(p) else "negative"
        _emit(args, {"cmd": "parse", "sort": sort, "prop": text}, text)
    else:
        p = parse_uprop(args.prop)
        text = S.write_sexp(S.uprop_to_sexp(p)) if args.format == "sexp" else print_uprop(p)
        _emit(args, {"cmd": "parse", "sort": "unpolarized", "prop": text}, text)
    return 0


def _cmd_erase(args) -> int:
    from .syntax import erase_neg, erase_pos

    a = parse_pprop(args.prop)
    p = erase_pos(a) if is_pos(a) else erase_neg(a)
    text = S.write_sexp(S.uprop_to_sexp(p)) if args.format == "sexp" else print_uprop(p)
    _emit(args, {"cmd": "erase", "prop": text}, text)
    return 0


def _cmd_polarize(args) -> int:
    p = parse_uprop(args.prop)
    a = polarize(p, _STRATEGIES[args.strategy])
    text = S.write_sexp(S.pprop_to_sexp(a)) if args.format == "sexp" else print_pprop(a)
    _emit(args, {"cmd": "polarize", "strategy": args.strategy, "prop": text}, text)
    return 0


def _cmd_check(args) -> int:
    ctx = _parse_ctx(args)
    goal = _goal_succedent(args.type)
    term = _read_term(args.term)
    omega = tuple(parse_pprop(o) for o in args.omega or [])
    try:
        check_term(ctx, omega, term, goal)
    except CheckError as exc:
        _error(f"check failed: {exc}")
        _emit(args, {"cmd": "check", "status": "invalid", "reason": str(exc)}, "invalid")
        return 1
    _emit(args, {"cmd": "check", "status": "valid"}, "valid")
    return 0


def _cmd_check_u(args) -> int:
    gamma = [parse_uprop(g) for g in args.gamma or []]
    goal = parse_uprop(args.goal)
    d = S.uderiv_from_sexp(S.read_sexp(args.deriv if args.deriv != "-" else sys.stdin.read()))
    seq = u.USequent.make(gamma, goal)
    try:
        u.check_uderiv(seq, d)
    except CheckError as exc:
        _error(f"check failed: {exc}")
        _emit(args, {"cmd": "check-u", "status": "invalid", "reason": str(exc)}, "invalid")
        return 1
    _emit(args, {"cmd": "check-u", "status": "valid"}, "valid")
    return 0


def _cmd_cut(args) -> int:
    a = parse_pprop(args.type)
    first = _read_term(args.first)
    second = _read_term(args.second)
    match args.part:
        case "pos":
            out = cut_pos(first, a, second)
        case "neg":
            out = cut_neg(first, a, second)
        case "rsubst":
            out = rsubst(first, args.var, a, second)
        case "lsubst":
            out = lsubst(first, a, second)
        case _:
            raise AssertionError
    text = _term_out(args, out)
    _emit(args, {"cmd": "cut", "part": args.part, "term": text}, text)
    return 0


def _cmd_expand(args) -> int:
    a = parse_pprop(args.type)
    term = _read_term(args.term)
    if is_pos(a):
        if not args.var:
            _error("positive expansion needs --var for the suspension to replace")
            return 2
        out = expand_pos(a, args.var, term)
    else:
        out = expand_neg(a, term)
    text = _term_out(args, out)
    _emit(args, {"cmd": "expand", "term": text}, text)
    return 0


def _cmd_focalize(args) -> int:
    ctx = _parse_ctx(args)
    goal = _goal_succedent(args.type)
    if isinstance(goal, INeg):
        goal = SPos(Down(goal.prop))  # stabilize a negative target
    d = S.uderiv_from_sexp(S.read_sexp(args.deriv if args.deriv != "-" else sys.stdin.read()))
    term = focalize(d, ctx, goal)
    text = _term_out(args, term)
    _emit(args, {"cmd": "focalize", "term": text}, text)
    return 0


def _cmd_defocalize(args) -> int:
    ctx = _parse_ctx(args)
    goal = _goal_succedent(args.type)
    term = _read_term(args.term)
    omega = tuple(parse_pprop(o) for o in args.omega or [])
    d = defocalize_term(ctx, omega, term, goal)
    text = (S.write_sexp(S.uderiv_to_sexp(d)) if args.format == "sexp"
            else S.uderiv_to_text(d))
    _emit(args, {"cmd": "defocalize", "deriv": S.write_sexp(S.uderiv_to_sexp(d))}, text)
    return 0


def _prove_goal(args):
    p = parse_uprop(args.prop)
    return INeg(polarize(p, _STRATEGIES[args.strategy]))


def _cmd_prove(args) -> int:
    goal = _prove_goal(args)
    stats = SearchStats()
    term = prove(Ctx.empty(), goal, stats=stats)
    record = {
        "cmd": "prove",
        "strategy": args.strategy,
        "status": "provable" if term is not None else "not-provable",
        "stable_visited": stats.stable_visited,
        "prunes": stats.prunes,
    }
    if term is None:
        _emit(args, record, "not provable")
        return 1
    record["term"] = S.write_sexp(S.term_to_sexp(term))
    _emit(args, record, _term_out(args, term))
    return 0


def _cmd_count(args) -> int:
    goal = _prove_goal(args)
    stats = SearchStats()
    n, exact = count_derivations(Ctx.empty(), goal, budget=args.budget, stats=stats)
    record = {
        "cmd": "count",
        "strategy": args.strategy,
        "count": n,
        "exact": exact,
        "stable_visited": stats.stable_visited,
        "prunes": stats.prunes,
    }
    _emit(args, record, f"{n} ({'exact' if exact else 'at least'})")
    return 0


def _cmd_refute(args) -> int:
    p = parse_uprop(args.prop)
    model = kripke_refute(p, args.max_worlds)
    if model is None:
        _emit(args, {"cmd": "refute", "status": "no-countermodel",
                     "max_worlds": args.max_worlds},
              f"no countermodel within {args.max_worlds} worlds")
        return 0
    record = {
        "cmd": "refute",
        "status": "refuted",
        "worlds": model.size,
        "root": model.root,
        "order": sorted([a, b] for (a, b) in model.le if a != b),
        "valuation": [sorted(v) for v in model.valuation],
    }
    _emit(args, record, model.describe())
    return 1


# -- argument parsing ---------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="focal",
        description="Check, normalize, translate, and decide polarized "
                    "intuitionistic propositional logic.",
    )
    ap.add_argument("--format", choices=["text", "sexp", "json-lines"],
                    default="text")
    ap.add_argument("--seed", type=int, default=0,
                    help="accepted for reproducibility; all commands are "
                         "deterministic")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_sub(name, help):
        # Re-declare the global flags with SUPPRESS defaults so they may be
        # written after the subcommand without clobbering a top-level value.
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=["text", "sexp", "json-lines"],
                       default=argparse.SUPPRESS)
        p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        return p

    def common_prove(p):
        p.add_argument("--strategy", choices=sorted(_STRATEGIES), default="neg")
        p.add_argument("prop")

    p = sub.add_parser("parse", help="parse and reprint a proposition")
    p.add_argument("--polarized", action="store_true")
    p.add_argument("prop")
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("erase", help="erase a polarized proposition")
    p.add_argument("prop")
    p.set_defaults(fn=_cmd_erase)

    p = sub.add_parser("polarize", help="polarize an unpolarized proposition")
    common_prove(p)
    p.set_defaults(fn=_cmd_polarize)

    p = sub.add_parser("check", help="check a proof term (s-expression)")
    p.add_argument("--hyp", action="append", metavar="x:A-")
    p.add_argument("--susp", action="append", metavar="z:A+")
    p.add_argument("--omega", action="append", metavar="A+")
    p.add_argument("--type", required=True, help="succedent (prop or sexp)")
    p.add_argument("term")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("check-u", help="check an unfocused derivation")
    p.add_argument("--gamma", action="append", metavar="P")
    p.add_argument("--goal", required=True)
    p.add_argument("deriv")
    p.set_defaults(fn=_cmd_check_u)

    p = sub.add_parser("cut", help="apply hereditary substitution")
    p.add_argument("--part", choices=["pos", "neg", "rsubst", "lsubst"],
                   required=True)
    p.add_argument("--type", required=True, help="the cut proposition")
    p.add_argument("--var", help="substituted variable (rsubst)")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=_cmd_cut)

    p = sub.add_parser("expand", help="identity-expand a proof term")
    p.add_argument("--type", required=True)
    p.add_argument("--var", help="suspension variable (positive expansion)")
    p.add_argument("term")
    p.set_defaults(fn=_cmd_expand)

    p = sub.add_parser("focalize", help="focus an unfocused derivation")
    p.add_argument("--hyp", action="append", metavar="x:A-")
    p.add_argument("--susp", action="append", metavar="z:A+")
    p.add_argument("--type", required=True)
    p.add_argument("deriv")
    p.set_defaults(fn=_cmd_focalize)

    p = sub.add_parser("defocalize", help="erase a proof term to a derivation")
    p.add_argument("--hyp", action="append", metavar="x:A-")
    p.add_argument("--susp", action="append", metavar="z:A+")
    p.add_argument("--omega", action="append", metavar="A+")
    p.add_argument("--type", required=True)
    p.add_argument("term")
    p.set_defaults(fn=_cmd_defocalize)

    p = sub.add_parser("prove", help="decide an unpolarized proposition")
    common_prove(p)
    p.set_defaults(fn=_cmd_prove)

    p = sub.add_parser("count", help="count focused derivations")
    common_prove(p)
    p.add_argument("--budget", type=int, default=None,
                   help="stable-sequent expansion limit")
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("refute", help="search for a Kripke countermodel")
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("prop")
    p.set_defaults(fn=_cmd_refute)

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        _error(str(exc))
        return 2
    except FocalError as exc:
        _error(f"{type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
