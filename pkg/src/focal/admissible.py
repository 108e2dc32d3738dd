"""Derived rules that let the focused calculus mimic unfocused inference.

Each combinator assembles its output from cut, identity expansion, the focal
substitutions, and the primitive term formers; none of them inducts over
derivations.  Premise terms live at stable sequents, so every combinator can
interleave left work freely, exactly like the unfocused rule it imitates.

The shift-removal helpers strip an outermost tower of double shifts and
return a wrapper that restores it around any derivation.
"""

from __future__ import annotations

import enum
from typing import Callable

from .cut import lsubst, rsubst
from .errors import PremiseMismatch
from .identity import expand_neg, expand_pos
from .kernel import (
    App,
    Case,
    FocL,
    FocR,
    Inl,
    Inr,
    Lam,
    LetPair,
    LetThunk,
    LetUnit,
    Match,
    NameSupply,
    Nil,
    PairN,
    PairP,
    Proj1,
    Proj2,
    Ret,
    SuspendNeg,
    SuspendPos,
    Term,
    Thunk,
    UnitN,
    UnitP,
    Var,
    Abort,
    free_vars,
)
from .syntax import Down, NAnd, Neg, NImp, PAnd, POr, Pos, Up


class RuleId(enum.Enum):
    INIT_SUSP_NEG = "initsuspneg"
    INIT_NEG = "initneg"
    INIT_SUSP_POS = "initsusppos"
    INIT_POS = "initpos"
    BOT_UL = "botul"
    OR_UR1 = "orur1"
    OR_UR2 = "orur2"
    OR_UL = "orul"
    TOP_POS_UR = "topposur"
    TOP_POS_UL = "topposul"
    AND_POS_UR = "andposur"
    AND_POS_UL = "andposul"
    IMP_UR = "impur"
    IMP_UL = "impul"
    TOP_NEG_UR = "topnegur"
    AND_NEG_UR = "andnegur"
    AND_NEG_UL1 = "andnegul1"
    AND_NEG_UL2 = "andnegul2"
    DOWN_UP_UR = "downupur"
    UP_DOWN_UL = "updownul"


def _supply(*terms: Term) -> NameSupply:
    avoid: set[str] = set()
    for t in terms:
        avoid |= free_vars(t)
    return NameSupply(avoid=avoid)


# -- initial rules ----------------------------------------------------------

def init_susp_neg(x: str) -> Term:
    """x : p-  proves  <p->."""
    return FocL(x, Nil())


def init_neg(x: str) -> Term:
    """x : p-  proves  dn(p-)."""
    return FocR(Thunk(SuspendNeg(FocL(x, Nil()))))


def init_susp_pos(z: str) -> Term:
    """z : <p+>  proves  p+."""
    return FocR(Var(z))


def init_pos(x: str, p: Pos) -> Term:
    """x : up(p+)  proves  p+."""
    return FocL(x, Match(SuspendPos("z", p, FocR(Var("z")))))


# -- disjunction ------------------------------------------------------------

def bot_ul(x: str) -> Term:
    """x : up(0)  proves any stable U."""
    return FocL(x, Match(Abort()))


def or_ur1(n1: Term, a: Pos, b: Pos) -> Term:
    """From  |- a  conclude  |- a + b."""
    sup = _supply(n1)
    z = sup.fresh("z")
    return lsubst(n1, a, expand_pos(a, z, FocR(Inl(Var(z), b)), sup))


def or_ur2(n2: Term, a: Pos, b: Pos) -> Term:
    """From  |- b  conclude  |- a + b."""
    sup = _supply(n2)
    z = sup.fresh("z")
    return lsubst(n2, b, expand_pos(b, z, FocR(Inr(Var(z), a)), sup))


def or_ul(x: str, x1: str, n1: Term, x2: str, n2: Term, a: Pos, b: Pos) -> Term:
    """From  x1 : up(a) |- U  and  x2 : up(b) |- U  conclude  x : up(a+b) |- U."""
    sup = _supply(n1, n2)
    sup.reserve({x, x1, x2})
    z1 = sup.fresh("z")
    z2 = sup.fresh("z")
    da, db = Down(Up(a)), Down(Up(b))
    # A closed case split re-labelling each branch under its own shift pair.
    n_id = Case(
        expand_pos(a, z1, FocR(Inl(Thunk(Ret(FocR(Var(z1)))), db)), sup),
        expand_pos(b, z2, FocR(Inr(Thunk(Ret(FocR(Var(z2)))), da)), sup),
    )
    branches = Case(LetThunk(x1, Up(a), n1), LetThunk(x2, Up(b), n2))
    return FocL(x, Match(lsubst(n_id, POr(da, db), branches)))


# -- positive conjunction ---------------------------------------------------

def top_pos_ur() -> Term:
    """|- 1."""
    return FocR(UnitP())


def top_pos_ul(x: str, n: Term) -> Term:
    """From |- U conclude x : up(1) |- U."""
    return FocL(x, Match(LetUnit(n)))


def and_pos_ur(n1: Term, n2: Term, a: Pos, b: Pos) -> Term:
    """From  |- a  and  |- b  conclude  |- a * b."""
    sup = _supply(n1, n2)
    x1 = sup.fresh("x")
    z1 = sup.fresh("z")
    z2 = sup.fresh("z")
    pair = expand_pos(
        b,
        z2,
        FocL(x1, Match(expand_pos(a, z1, FocR(PairP(Var(z1), Var(z2))), sup))),
        sup,
    )
    return rsubst(Ret(n1), x1, Up(a), lsubst(n2, b, pair))


def and_pos_ul(x: str, x1: str, x2: str, n: Term, a: Pos, b: Pos) -> Term:
    """From  x1 : up(a), x2 : up(b) |- U  conclude  x : up(a*b) |- U."""
    sup = _supply(n)
    sup.reserve({x, x1, x2})
    z1 = sup.fresh("z")
    z2 = sup.fresh("z")
    n_id = LetPair(
        expand_pos(
            a,
            z1,
            expand_pos(
                b,
                z2,
                FocR(PairP(Thunk(Ret(FocR(Var(z1)))), Thunk(Ret(FocR(Var(z2)))))),
                sup,
            ),
            sup,
        )
    )
    body = LetPair(LetThunk(x1, Up(a), LetThunk(x2, Up(b), n)))
    return FocL(x, Match(lsubst(n_id, PAnd(Down(Up(a)), Down(Up(b))), body)))


# -- implication ------------------------------------------------------------

def imp_ur(x1: str, n1: Term, a: Pos, b: Neg) -> Term:
    """From  x1 : up(a) |- dn(b)  conclude  |- dn(a -> b)."""
    sup = _supply(n1)
    sup.reserve({x1})
    x = sup.fresh("x")
    xp = sup.fresh("x")
    z = sup.fresh("z")
    n_id = Lam(
        expand_pos(
            a,
            z,
            expand_neg(
                b,
                FocL(
                    x,
                    App(
                        Thunk(Ret(FocR(Var(z)))),
                        Match(LetThunk(xp, b, FocL(xp, Nil()))),
                    ),
                ),
                sup,
            ),
            sup,
        )
    )
    packaged = Lam(LetThunk(x1, Up(a), Ret(n1)))
    return FocR(Thunk(rsubst(packaged, x, NImp(Down(Up(a)), Up(Down(b))), n_id)))


def imp_ul(x: str, n1: Term, x2: str, n2: Term, a: Pos, b: Neg) -> Term:
    """From  |- a  and  x2 : b |- U  conclude  x : a -> b |- U."""
    sup = _supply(n1, n2)
    sup.reserve({x, x2})
    z = sup.fresh("z")
    applied = lsubst(
        n1,
        a,
        expand_pos(
            a, z, FocR(Thunk(expand_neg(b, FocL(x, App(Var(z), Nil())), sup))), sup
        ),
    )
    return lsubst(applied, Down(b), LetThunk(x2, b, n2))


# -- negative conjunction ---------------------------------------------------

def top_neg_ur() -> Term:
    """|- dn(T)."""
    return FocR(Thunk(UnitN()))


def and_neg_ur(n1: Term, n2: Term, a: Neg, b: Neg) -> Term:
    """From  |- dn(a)  and  |- dn(b)  conclude  |- dn(a & b)."""
    sup = _supply(n1, n2)
    x = sup.fresh("x")
    y = sup.fresh("y")
    n_id = PairN(
        expand_neg(
            a,
            FocL(x, Proj1(Match(LetThunk(y, a, FocL(y, Nil()))), Up(Down(b)))),
            sup,
        ),
        expand_neg(
            b,
            FocL(x, Proj2(Match(LetThunk(y, b, FocL(y, Nil()))), Up(Down(a)))),
            sup,
        ),
    )
    packaged = PairN(Ret(n1), Ret(n2))
    return FocR(Thunk(rsubst(packaged, x, NAnd(Up(Down(a)), Up(Down(b))), n_id)))


def and_neg_ul1(x: str, x1: str, n1: Term, a: Neg, b: Neg) -> Term:
    """From  x1 : a |- U  conclude  x : a & b |- U."""
    return rsubst(expand_neg(a, FocL(x, Proj1(Nil(), b))), x1, a, n1)


def and_neg_ul2(x: str, x2: str, n2: Term, a: Neg, b: Neg) -> Term:
    """From  x2 : b |- U  conclude  x : a & b |- U."""
    return rsubst(expand_neg(b, FocL(x, Proj2(Nil(), a))), x2, b, n2)


# -- shift introduction / elimination ---------------------------------------

def down_up_ur(n1: Term) -> Term:
    """From  |- a  conclude  |- dn(up(a))."""
    return FocR(Thunk(Ret(n1)))


def up_down_ul(x: str, x1: str, a: Neg, n1: Term) -> Term:
    """From  x1 : a |- U  conclude  x : up(dn(a)) |- U."""
    return FocL(x, Match(LetThunk(x1, a, n1)))


# -- dispatcher --------------------------------------------------------------

_DISPATCH: dict[RuleId, Callable] = {
    RuleId.INIT_SUSP_NEG: init_susp_neg,
    RuleId.INIT_NEG: init_neg,
    RuleId.INIT_SUSP_POS: init_susp_pos,
    RuleId.INIT_POS: init_pos,
    RuleId.BOT_UL: bot_ul,
    RuleId.OR_UR1: or_ur1,
    RuleId.OR_UR2: or_ur2,
    RuleId.OR_UL: or_ul,
    RuleId.TOP_POS_UR: top_pos_ur,
    RuleId.TOP_POS_UL: top_pos_ul,
    RuleId.AND_POS_UR: and_pos_ur,
    RuleId.AND_POS_UL: and_pos_ul,
    RuleId.IMP_UR: imp_ur,
    RuleId.IMP_UL: imp_ul,
    RuleId.TOP_NEG_UR: top_neg_ur,
    RuleId.AND_NEG_UR: and_neg_ur,
    RuleId.AND_NEG_UL1: and_neg_ul1,
    RuleId.AND_NEG_UL2: and_neg_ul2,
    RuleId.DOWN_UP_UR: down_up_ur,
    RuleId.UP_DOWN_UL: up_down_ul,
}


def adm(rule: RuleId, *args) -> Term:
    """Apply a derived rule by name; argument shapes are per-rule."""
    fn = _DISPATCH[rule]
    try:
        return fn(*args)
    except TypeError as exc:
        raise PremiseMismatch(f"{rule.value}: {exc}") from None


# -- shift removal -----------------------------------------------------------

def shift_removal_pos(a: Pos) -> tuple[Pos, Callable[[Term], Term]]:
    """Strip outermost dn(up(..)) pairs; the wrapper restores them around a
    proof of the stripped proposition."""
    match a:
        case Down(Up(inner)):
            base, wrap = shift_removal_pos(inner)
            return base, (lambda n, w=wrap: down_up_ur(w(n)))
        case _:
            return a, (lambda n: n)


def shift_removal_neg(a: Neg) -> tuple[Neg, Callable[[str, str, Term], Term]]:
    """Strip outermost up(dn(..)) pairs.  The wrapper maps a derivation using
    hypothesis ``x_inner : stripped`` to one using ``x_outer : a``."""
    match a:
        case Up(Down(inner)):
            base, wrap = shift_removal_neg(inner)

            def wrapper(x_outer: str, x_inner: str, n: Term, _w=wrap, _mid=inner):
                sup = NameSupply(avoid=free_vars(n) | {x_outer, x_inner})
                x_mid = sup.fresh("x")
                return up_down_ul(x_outer, x_mid, _mid, _w(x_mid, x_inner, n))

            return base, wrapper
        case _:
            def base_wrapper(x_outer: str, x_inner: str, n: Term):
                if x_outer == x_inner:
                    return n
                from .kernel import rename_free

                return rename_free(n, x_inner, x_outer)

            return a, base_wrapper
