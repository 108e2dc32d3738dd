"""Identity expansion: eta-expansion over the structure of a proposition.

Expansion turns a use of a suspended hypothesis (or succedent) into honest
inversion; the identity principles fall out by expanding a bare variable use.
Unlike cut, these operations are insensitive to suspension normality: they
are exactly where non-atomic suspensions earn their keep.
"""

from __future__ import annotations

from .kernel import (
    Abort,
    App,
    Case,
    FocL,
    FocR,
    Inl,
    Inr,
    Lam,
    LetThunk,
    LetUnit,
    LetPair,
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
    free_vars,
    subst_neg,
    subst_pos,
)
from .syntax import (
    Down,
    NAnd,
    Neg,
    NegAtom,
    NImp,
    NTop,
    PAnd,
    POne,
    POr,
    Pos,
    PosAtom,
    Up,
    Zero,
)


def expand_pos(a: Pos, z: str, n: Term, supply: NameSupply | None = None) -> Term:
    """eta(a)(z. n): trade the suspension z : <a> for inversion of a.

    n proves ``G, z:<a> ; W |- U``; the result proves ``G ; a, W |- U``.
    """
    if supply is None:
        supply = NameSupply(avoid=free_vars(n) | {z})
    else:
        supply.reserve(free_vars(n) | {z})
    return _expand_pos(a, z, n, supply)


def expand_neg(a: Neg, n: Term, supply: NameSupply | None = None) -> Term:
    """eta(a)(n): trade the suspended succedent <a> for inversion of a.

    n proves ``G ; . |- <a>``; the result proves ``G ; . |- a``.
    """
    if supply is None:
        supply = NameSupply(avoid=free_vars(n))
    else:
        supply.reserve(free_vars(n))
    return _expand_neg(a, n, supply)


def _expand_pos(a: Pos, z: str, n: Term, supply: NameSupply) -> Term:
    match a:
        case PosAtom(_):
            return SuspendPos(z, a, n)
        case Down(b):
            x = supply.fresh("x")
            v = Thunk(_expand_neg(b, FocL(x, Nil()), supply))
            return LetThunk(x, b, subst_pos(v, z, n))
        case Zero():
            return Abort()
        case POr(left, right):
            z1 = supply.fresh("z")
            z2 = supply.fresh("z")
            return Case(
                _expand_pos(left, z1, subst_pos(Inl(Var(z1), right), z, n), supply),
                _expand_pos(right, z2, subst_pos(Inr(Var(z2), left), z, n), supply),
            )
        case POne():
            return LetUnit(subst_pos(UnitP(), z, n))
        case PAnd(left, right):
            z1 = supply.fresh("z")
            z2 = supply.fresh("z")
            inner = subst_pos(PairP(Var(z1), Var(z2)), z, n)
            return LetPair(
                _expand_pos(left, z1, _expand_pos(right, z2, inner, supply), supply)
            )
    raise TypeError(a)


def _expand_neg(a: Neg, n: Term, supply: NameSupply) -> Term:
    match a:
        case NegAtom(_):
            return SuspendNeg(n)
        case Up(b):
            z = supply.fresh("z")
            return Ret(subst_neg(n, Match(_expand_pos(b, z, FocR(Var(z)), supply))))
        case NImp(left, right):
            z = supply.fresh("z")
            return Lam(
                _expand_pos(
                    left,
                    z,
                    _expand_neg(right, subst_neg(n, App(Var(z), Nil())), supply),
                    supply,
                )
            )
        case NTop():
            return UnitN()
        case NAnd(left, right):
            return PairN(
                _expand_neg(left, subst_neg(n, Proj1(Nil(), right)), supply),
                _expand_neg(right, subst_neg(n, Proj2(Nil(), left)), supply),
            )
    raise TypeError(a)


def id_pos(a: Pos, z: str = "z") -> Term:
    """The positive identity: proves ``G ; a |- a`` for any G."""
    return expand_pos(a, z, FocR(Var(z)))


def id_neg(a: Neg, x: str) -> Term:
    """The negative identity: proves ``G ; . |- a`` given x : a in G."""
    return expand_neg(a, FocL(x, Nil()))
