"""Between focused and unfocused derivations.

De-focalization erases a checked proof term into an unfocused derivation of
the erased sequent, using the ordered tail context to track the inversion
context.  Focalization runs the other way: structural recursion over an
unfocused derivation, dispatching each rule through shift removal and the
matching derived rule.  The corollaries route unfocused cut and identity
through the focused kernel.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import unfocused as u
from .admissible import (
    and_neg_ul1,
    and_neg_ul2,
    and_neg_ur,
    and_pos_ul,
    and_pos_ur,
    bot_ul,
    imp_ul,
    imp_ur,
    init_neg,
    init_pos,
    init_susp_neg,
    init_susp_pos,
    or_ul,
    or_ur1,
    or_ur2,
    shift_removal_neg,
    shift_removal_pos,
    top_neg_ur,
    top_pos_ur,
)
from .cut import lsubst
from .errors import CheckFailure, ErasureMismatch, NotStable, NotSuspensionNormal, RuleMismatch
from .identity import id_neg
from .kernel import (
    Abort,
    App,
    Case,
    Ctx,
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
    NegHyp,
    Nil,
    Omega,
    PairN,
    PairP,
    Proj1,
    Proj2,
    Ret,
    Spine,
    SuspendNeg,
    SuspendPos,
    SuspHyp,
    Term,
    Thunk,
    UnitN,
    UnitP,
    Value,
    Var,
    check_spine,
    check_term,
    check_value,
    is_suspension_normal,
)
from .syntax import (
    And,
    Atom,
    Bot,
    Down,
    Imp,
    INeg,
    NAnd,
    Neg,
    NegAtom,
    NImp,
    NTop,
    Or,
    PAnd,
    POne,
    POr,
    Pos,
    PosAtom,
    RFoc,
    SPos,
    Strategy,
    Succedent,
    SuspNeg,
    Top,
    UProp,
    Up,
    Zero,
    erase_neg,
    erase_pos,
    erase_succ,
    is_stable,
    polarize,
    print_uprop,
)


def erase_ctx(ctx: Ctx) -> list[UProp]:
    """Erase a hypothetical context to a multiset (as a list) of propositions."""
    out = []
    for _, hyp in ctx.items():
        if isinstance(hyp, SuspHyp):
            if not isinstance(hyp.prop, PosAtom):
                raise NotSuspensionNormal("suspended non-atomic hypothesis")
            out.append(Atom(hyp.prop.name))
        else:
            out.append(erase_neg(hyp.prop))
    return out


def erase_omega(omega: Omega) -> tuple[UProp, ...]:
    return tuple(erase_pos(a) for a in omega)


# ---------------------------------------------------------------------------
# De-focalization
# ---------------------------------------------------------------------------

def defocalize_value(ctx: Ctx, v: Value, a: Pos) -> u.UDeriv:
    """Translate ``G |- v : [a]`` into a derivation of ``(G)* ; . |- (a)*``."""
    if not is_suspension_normal(ctx, RFoc(a)):
        raise NotSuspensionNormal("de-focalization needs a suspension-normal sequent")
    check_value(ctx, v, a)
    return _dv(ctx, v, a)


def defocalize_term(ctx: Ctx, omega: Omega, n: Term, su: Succedent) -> u.UDeriv:
    """Translate ``G ; W |- n : U`` into ``(G)* ; (W)* |- (U)*``."""
    if not is_suspension_normal(ctx, su):
        raise NotSuspensionNormal("de-focalization needs a suspension-normal sequent")
    check_term(ctx, omega, n, su)
    return _dt(ctx, tuple(omega), n, su)


def defocalize_spine(ctx: Ctx, s: Spine, a: Neg, su: Succedent) -> u.UDeriv:
    """Translate ``G ; [a] |- s : U`` into ``(G)* ; (a)* |- (U)*``."""
    if not is_suspension_normal(ctx, su):
        raise NotSuspensionNormal("de-focalization needs a suspension-normal sequent")
    check_spine(ctx, s, a, su)
    return _ds(ctx, s, a, su)


def defocalize_sequent(ctx: Ctx, omega: Omega, su: Succedent) -> u.USequent:
    """The unfocused sequent a de-focalized term derivation lives at."""
    return u.USequent.make(erase_ctx(ctx), erase_succ(su), erase_omega(omega))


def _unnil(d: u.UDeriv) -> u.UDeriv:
    assert isinstance(d, u.PsiNil), d
    return d.sub


def _uncons(d: u.UDeriv) -> u.UDeriv:
    assert isinstance(d, u.PsiCons), d
    return d.sub


def _dv(ctx: Ctx, v: Value, a: Pos) -> u.UDeriv:
    match v, a:
        case Var(_), _:
            # A suspension-normal sequent suspends atoms only: init applies.
            return u.PsiNil(u.Init())
        case Thunk(body), Down(b):
            return _dt(ctx, (), body, INeg(b))  # shifts vanish under erasure
        case Inl(value, _), POr(left, _):
            return u.PsiNil(u.OrR1(_unnil(_dv(ctx, value, left))))
        case Inr(value, _), POr(_, right):
            return u.PsiNil(u.OrR2(_unnil(_dv(ctx, value, right))))
        case UnitP(), POne():
            return u.PsiNil(u.TopR())
        case PairP(fst, snd), PAnd(left, right):
            return u.PsiNil(
                u.AndR(_unnil(_dv(ctx, fst, left)), _unnil(_dv(ctx, snd, right)))
            )
    raise AssertionError((v, a))


def _dt(ctx: Ctx, omega: Omega, n: Term, su: Succedent) -> u.UDeriv:
    match n:
        case FocR(value):
            assert isinstance(su, SPos)
            return _dv(ctx, value, su.prop)
        case FocL(var, spine):
            hyp = ctx.get(var)
            assert isinstance(hyp, NegHyp)
            # The focused hypothesis is already in the context: dropping the
            # cons node is the built-in contraction.
            return _uncons(_ds(ctx, spine, hyp.prop, su))
        case SuspendPos(var, atom, body):
            sub = _dt(ctx.add(var, SuspHyp(atom)), omega[1:], body, su)
            return u.PsiCons(sub)
        case LetThunk(var, ann, body):
            sub = _dt(ctx.add(var, NegHyp(ann)), omega[1:], body, su)
            return u.PsiCons(sub)
        case Abort():
            return u.PsiCons(u.psi_left_lemma(Bot(), psi_len=len(omega) - 1))
        case Case(left, right):
            head = omega[0]
            assert isinstance(head, POr)
            conn = erase_pos(head)
            d1 = _uncons(_dt(ctx, (head.left,) + omega[1:], left, su))
            d2 = _uncons(_dt(ctx, (head.right,) + omega[1:], right, su))
            return u.PsiCons(u.psi_left_lemma(conn, d1, d2))
        case LetUnit(body):
            # No unfocused left rule for truth: push it into the context
            # (where it is simply never used) and continue.
            return u.PsiCons(_dt(ctx, omega[1:], body, su))
        case LetPair(body):
            head = omega[0]
            assert isinstance(head, PAnd)
            conn = erase_pos(head)
            sub = _dt(ctx, (head.left, head.right) + omega[1:], body, su)
            d1 = _uncons(_uncons(sub))
            return u.PsiCons(u.psi_left_lemma(conn, d1))
        case SuspendNeg(body):
            assert isinstance(su, INeg)
            return _dt(ctx, (), body, SuspNeg(su.prop))
        case Ret(body):
            assert isinstance(su, INeg) and isinstance(su.prop, Up)
            return _dt(ctx, (), body, SPos(su.prop.body))
        case Lam(body):
            assert isinstance(su, INeg) and isinstance(su.prop, NImp)
            imp = su.prop
            sub = _dt(ctx, (imp.left,), body, INeg(imp.right))
            return u.PsiNil(u.ImpR(_unnil(_uncons(sub))))
        case UnitN():
            return u.PsiNil(u.TopR())
        case PairN(fst, snd):
            assert isinstance(su, INeg) and isinstance(su.prop, NAnd)
            conj = su.prop
            return u.PsiNil(
                u.AndR(
                    _unnil(_dt(ctx, (), fst, INeg(conj.left))),
                    _unnil(_dt(ctx, (), snd, INeg(conj.right))),
                )
            )
    raise AssertionError(n)


def _ds(ctx: Ctx, s: Spine, a: Neg, su: Succedent) -> u.UDeriv:
    match s, a:
        case Nil(), _:
            # Suspension-normal, so the discharged succedent is an atom.
            return u.PsiCons(u.PsiNil(u.Init()))
        case Match(body), Up(b):
            return _dt(ctx, (b,), body, su)
        case App(value, rest), NImp(left, right):
            principal = Imp(erase_pos(left), erase_neg(right))
            arg = _unnil(_dv(ctx, value, left))
            body = _unnil(_uncons(_ds(ctx, rest, right, su)))
            return u.PsiCons(u.PsiNil(u.ImpL(principal, arg, body)))
        case Proj1(rest, _), NAnd(left, right):
            principal = And(erase_neg(left), erase_neg(right))
            sub = _unnil(_uncons(_ds(ctx, rest, left, su)))
            return u.PsiCons(u.PsiNil(u.AndL1(principal, sub)))
        case Proj2(rest, _), NAnd(left, right):
            principal = And(erase_neg(left), erase_neg(right))
            sub = _unnil(_uncons(_ds(ctx, rest, right, su)))
            return u.PsiCons(u.PsiNil(u.AndL2(principal, sub)))
    raise AssertionError((s, a))


# ---------------------------------------------------------------------------
# Focalization
# ---------------------------------------------------------------------------

def focalize(d: u.UDeriv, ctx: Ctx, su: Succedent) -> Term:
    """Turn an unfocused derivation of the erased sequent into a proof term
    at ``ctx ; . |- su``.  The succedent must be stable and the sequent
    suspension-normal."""
    if not is_stable(su):
        raise NotStable((), "focalization target must be stable")
    if not is_suspension_normal(ctx, su):
        raise NotSuspensionNormal("focalization needs a suspension-normal sequent")
    supply = NameSupply(avoid=set(ctx.names()))
    return _focal(d, ctx, su, supply)


def _goal_pos(su: Succedent) -> Pos:
    if not isinstance(su, SPos):
        raise ErasureMismatch("a right rule needs a positive stable succedent")
    return su.prop


def _focal(d: u.UDeriv, ctx: Ctx, su: Succedent, supply: NameSupply) -> Term:
    match d:
        case u.PsiNil(sub):
            return _focal(sub, ctx, su, supply)
        case u.PsiCons(_):
            raise ErasureMismatch("tail context nodes cannot be focalized")

        case u.Init():
            return _focal_init(ctx, su, supply)

        case u.TopR():
            base, wrap = shift_removal_pos(_goal_pos(su))
            if isinstance(base, POne):
                return wrap(top_pos_ur())
            if isinstance(base, Down) and isinstance(base.body, NTop):
                return wrap(top_neg_ur())
            raise ErasureMismatch("goal does not erase to true")
        case u.AndR(d1, d2):
            base, wrap = shift_removal_pos(_goal_pos(su))
            if isinstance(base, PAnd):
                n1 = _focal(d1, ctx, SPos(base.left), supply)
                n2 = _focal(d2, ctx, SPos(base.right), supply)
                return wrap(and_pos_ur(n1, n2, base.left, base.right))
            if isinstance(base, Down) and isinstance(base.body, NAnd):
                conj = base.body
                n1 = _focal(d1, ctx, SPos(Down(conj.left)), supply)
                n2 = _focal(d2, ctx, SPos(Down(conj.right)), supply)
                return wrap(and_neg_ur(n1, n2, conj.left, conj.right))
            raise ErasureMismatch("goal does not erase to a conjunction")
        case u.OrR1(d1):
            base, wrap = shift_removal_pos(_goal_pos(su))
            if not isinstance(base, POr):
                raise ErasureMismatch("goal does not erase to a disjunction")
            n1 = _focal(d1, ctx, SPos(base.left), supply)
            return wrap(or_ur1(n1, base.left, base.right))
        case u.OrR2(d2):
            base, wrap = shift_removal_pos(_goal_pos(su))
            if not isinstance(base, POr):
                raise ErasureMismatch("goal does not erase to a disjunction")
            n2 = _focal(d2, ctx, SPos(base.right), supply)
            return wrap(or_ur2(n2, base.left, base.right))
        case u.ImpR(d1):
            base, wrap = shift_removal_pos(_goal_pos(su))
            if not (isinstance(base, Down) and isinstance(base.body, NImp)):
                raise ErasureMismatch("goal does not erase to an implication")
            imp = base.body
            x1 = supply.fresh("x")
            n1 = _focal(d1, ctx.add(x1, NegHyp(Up(imp.left))), SPos(Down(imp.right)), supply)
            return wrap(imp_ur(x1, n1, imp.left, imp.right))

        case u.BotL():
            for h, base, wrap in _matching_hyps(ctx, Bot(), supply):
                if isinstance(base, Up) and isinstance(base.body, Zero):
                    return _wrap_left(wrap, h, supply, bot_ul)
            raise ErasureMismatch("no hypothesis erasing to false")
        case u.OrL(principal, d1, d2):
            for h, base, wrap in _matching_hyps(ctx, principal, supply):
                if isinstance(base, Up) and isinstance(base.body, POr):
                    disj = base.body
                    x1, x2 = supply.fresh("x"), supply.fresh("x")
                    n1 = _focal(d1, ctx.add(x1, NegHyp(Up(disj.left))), su, supply)
                    n2 = _focal(d2, ctx.add(x2, NegHyp(Up(disj.right))), su, supply)
                    return _wrap_left(
                        wrap, h, supply,
                        lambda xo: or_ul(xo, x1, n1, x2, n2, disj.left, disj.right),
                    )
            raise ErasureMismatch("no hypothesis erasing to the split disjunction")
        case u.AndL1(principal, d1) | u.AndL2(principal, d1):
            first = isinstance(d, u.AndL1)
            for h, base, wrap in _matching_hyps(ctx, principal, supply):
                if isinstance(base, NAnd):
                    x1 = supply.fresh("x")
                    side = base.left if first else base.right
                    n1 = _focal(d1, ctx.add(x1, NegHyp(side)), su, supply)
                    mk = and_neg_ul1 if first else and_neg_ul2
                    return _wrap_left(
                        wrap, h, supply,
                        lambda xo: mk(xo, x1, n1, base.left, base.right),
                    )
                if isinstance(base, Up) and isinstance(base.body, PAnd):
                    conj = base.body
                    x1, x2 = supply.fresh("x"), supply.fresh("x")
                    ctx2 = ctx.add(x1, NegHyp(Up(conj.left))).add(x2, NegHyp(Up(conj.right)))
                    n1 = _focal(d1, ctx2, su, supply)
                    return _wrap_left(
                        wrap, h, supply,
                        lambda xo: and_pos_ul(xo, x1, x2, n1, conj.left, conj.right),
                    )
            raise ErasureMismatch("no hypothesis erasing to the split conjunction")
        case u.ImpL(principal, darg, dbody):
            for h, base, wrap in _matching_hyps(ctx, principal, supply):
                if isinstance(base, NImp):
                    imp = base
                    narg = _focal(darg, ctx, SPos(imp.left), supply)
                    x2 = supply.fresh("x")
                    nbody = _focal(dbody, ctx.add(x2, NegHyp(imp.right)), su, supply)
                    return _wrap_left(
                        wrap, h, supply,
                        lambda xo: imp_ul(xo, narg, x2, nbody, imp.left, imp.right),
                    )
            raise ErasureMismatch("no hypothesis erasing to the applied implication")
    raise ErasureMismatch(f"unrecognized derivation node {type(d).__name__}")


def _matching_hyps(ctx: Ctx, erasure: UProp, supply: NameSupply):
    """Negative hypotheses whose erasure matches, with their shift removal."""
    del supply
    for name, hyp in ctx.items():
        if isinstance(hyp, NegHyp) and erase_neg(hyp.prop) == erasure:
            base, wrap = shift_removal_neg(hyp.prop)
            yield name, base, wrap


def _wrap_left(wrap, h: str, supply: NameSupply, mk) -> Term:
    """Build the rule output on a fresh inner name, then restore the shifts
    of the actual hypothesis h around it."""
    inner = supply.fresh("x")
    return wrap(h, inner, mk(inner))


def _focal_init(ctx: Ctx, su: Succedent, supply: NameSupply) -> Term:
    goal = erase_succ(su)
    if not isinstance(goal, Atom):
        raise ErasureMismatch("init proves atomic goals only")
    if isinstance(su, SuspNeg):
        for h, base, wrap in _matching_hyps(ctx, goal, supply):
            if isinstance(base, NegAtom):
                return _wrap_left(wrap, h, supply, init_susp_neg)
        raise ErasureMismatch(f"no negative hypothesis for {print_uprop(goal)}")
    base_goal, wrap_goal = shift_removal_pos(_goal_pos(su))
    if isinstance(base_goal, PosAtom):
        for name, hyp in ctx.items():
            if isinstance(hyp, SuspHyp) and hyp.prop == base_goal:
                return wrap_goal(init_susp_pos(name))
        for h, base, wrap in _matching_hyps(ctx, goal, supply):
            if base == Up(base_goal):
                return wrap_goal(
                    _wrap_left(wrap, h, supply, lambda xo: init_pos(xo, base_goal))
                )
        raise ErasureMismatch(f"no hypothesis for {print_uprop(goal)}")
    if isinstance(base_goal, Down) and isinstance(base_goal.body, NegAtom):
        atom = base_goal.body
        for h, base, wrap in _matching_hyps(ctx, goal, supply):
            if base == atom:
                return wrap_goal(_wrap_left(wrap, h, supply, init_neg))
        raise ErasureMismatch(f"no hypothesis for {print_uprop(goal)}")
    raise ErasureMismatch("init goal is not atomic after shift removal")


# ---------------------------------------------------------------------------
# Corollaries: unfocused cut and identity through the focused kernel
# ---------------------------------------------------------------------------

def unfocused_cut(
    gamma: Sequence[UProp], p: UProp, q: UProp, d1: u.UDeriv, d2: u.UDeriv
) -> u.UDeriv:
    """From derivations of ``gamma |- p`` and ``gamma, p |- q`` build one of
    ``gamma |- q``, by focalizing both, cutting, and de-focalizing."""
    s1 = u.USequent.make(gamma, p)
    s2 = u.USequent.make(list(gamma) + [p], q)
    try:
        u.check_uderiv(s1, d1)
        u.check_uderiv(s2, d2)
    except RuleMismatch as exc:
        raise CheckFailure(f"input derivation does not check: {exc}") from exc

    strategy = Strategy.ALL_NEG
    ctx = Ctx.empty()
    supply = NameSupply()
    for g in gamma:
        ctx = ctx.add(supply.fresh("g"), NegHyp(polarize(g, strategy)))
    pp = polarize(p, strategy)
    qq = polarize(q, strategy)

    n1 = focalize(d1, ctx, SPos(Down(pp)))
    xp = supply.fresh("g")
    n2 = focalize(d2, ctx.add(xp, NegHyp(pp)), SPos(Down(qq)))
    cut_term = lsubst(n1, Down(pp), LetThunk(xp, pp, n2))
    return _unnil(defocalize_term(ctx, (), cut_term, SPos(Down(qq))))


def unfocused_identity(p: UProp) -> u.UDeriv:
    """A derivation of ``p |- p`` (hence of ``gamma, p |- p`` for any gamma)."""
    pp = polarize(p, Strategy.ALL_NEG)
    ctx = Ctx.empty().add("x", NegHyp(pp))
    n = id_neg(pp, "x")
    return _unnil(defocalize_term(ctx, (), n, INeg(pp)))
