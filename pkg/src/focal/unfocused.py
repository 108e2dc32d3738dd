"""The unfocused sequent calculus, with an ordered tail context.

Contexts are multisets and the structural rules are implicit: checking only
ever asks whether a proposition is *present*, so weakening and contraction
are free and exchange is meaningless.  Sequents ``G ; Psi |- Q`` carry an
ordered tail Psi whose contents can only be moved into G left to right, via
the cons rule; ``Psi = []`` is the plain sequent form.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import PremiseMismatch, RuleMismatch
from .syntax import And, Atom, Bot, Imp, Or, Top, UProp, print_uprop


@dataclass(frozen=True)
class USequent:
    gamma: Counter  # multiset of UProp
    psi: tuple[UProp, ...]
    goal: UProp

    @staticmethod
    def make(gamma: Iterable[UProp], goal: UProp, psi: Iterable[UProp] = ()) -> "USequent":
        return USequent(Counter(gamma), tuple(psi), goal)

    def with_hyp(self, *props: UProp) -> "USequent":
        g = Counter(self.gamma)
        g.update(props)
        return USequent(g, self.psi, self.goal)

    def with_goal(self, goal: UProp) -> "USequent":
        return USequent(self.gamma, self.psi, goal)

    def __str__(self) -> str:
        gamma = ", ".join(sorted(print_uprop(p) for p in self.gamma.elements()))
        psi = ", ".join(print_uprop(p) for p in self.psi)
        return f"{gamma} ; {psi} |- {print_uprop(self.goal)}"


# ---------------------------------------------------------------------------
# Derivations: one node class per rule, left rules carry their principal
# formula so checking is syntax-directed.
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Init:
    pass


@dataclass(frozen=True, slots=True)
class BotL:
    pass


@dataclass(frozen=True, slots=True)
class OrR1:
    sub: "UDeriv"


@dataclass(frozen=True, slots=True)
class OrR2:
    sub: "UDeriv"


@dataclass(frozen=True, slots=True)
class OrL:
    principal: UProp
    left: "UDeriv"
    right: "UDeriv"


@dataclass(frozen=True, slots=True)
class TopR:
    pass


@dataclass(frozen=True, slots=True)
class AndR:
    left: "UDeriv"
    right: "UDeriv"


@dataclass(frozen=True, slots=True)
class AndL1:
    principal: UProp
    sub: "UDeriv"


@dataclass(frozen=True, slots=True)
class AndL2:
    principal: UProp
    sub: "UDeriv"


@dataclass(frozen=True, slots=True)
class ImpR:
    sub: "UDeriv"


@dataclass(frozen=True, slots=True)
class ImpL:
    principal: UProp
    arg: "UDeriv"
    body: "UDeriv"


@dataclass(frozen=True, slots=True)
class PsiCons:
    sub: "UDeriv"


@dataclass(frozen=True, slots=True)
class PsiNil:
    sub: "UDeriv"


UDeriv = Union[
    Init, BotL, OrR1, OrR2, OrL, TopR, AndR, AndL1, AndL2, ImpR, ImpL,
    PsiCons, PsiNil,
]

RULE_NAMES = {
    Init: "init", BotL: "botl", OrR1: "orr1", OrR2: "orr2", OrL: "orl",
    TopR: "topr", AndR: "andr", AndL1: "andl1", AndL2: "andl2",
    ImpR: "impr", ImpL: "impl", PsiCons: "cons", PsiNil: "nil",
}


def check_uderiv(seq: USequent, d: UDeriv) -> None:
    """Raise RuleMismatch at the first node whose premises do not fit."""
    _check(seq, d, ())


def checks_uderiv(seq: USequent, d: UDeriv) -> bool:
    try:
        check_uderiv(seq, d)
        return True
    except RuleMismatch:
        return False


def _bad(path, msg) -> RuleMismatch:
    return RuleMismatch(path, msg)


def _check(seq: USequent, d: UDeriv, path: tuple[str, ...]) -> None:
    if seq.psi:
        # The ordered tail admits exactly one rule.
        if not isinstance(d, PsiCons):
            raise _bad(path, f"nonempty tail context admits only cons, got "
                             f"{RULE_NAMES.get(type(d), '?')}")
        head, rest = seq.psi[0], seq.psi[1:]
        _check(USequent(seq.gamma + Counter([head]), rest, seq.goal),
               d.sub, path + ("sub",))
        return

    match d:
        case PsiCons(_):
            raise _bad(path, "cons with an empty tail context")
        case PsiNil(sub):
            _check(seq, sub, path + ("sub",))
        case Init():
            if not isinstance(seq.goal, Atom):
                raise _bad(path, f"init proves atoms, goal is {print_uprop(seq.goal)}")
            if seq.gamma[seq.goal] == 0:
                raise _bad(path, f"init: {print_uprop(seq.goal)} not in context")
        case BotL():
            if seq.gamma[Bot()] == 0:
                raise _bad(path, "false not in context")
        case TopR():
            if not isinstance(seq.goal, Top):
                raise _bad(path, "goal is not true")
        case OrR1(sub):
            if not isinstance(seq.goal, Or):
                raise _bad(path, "goal is not a disjunction")
            _check(seq.with_goal(seq.goal.left), sub, path + ("sub",))
        case OrR2(sub):
            if not isinstance(seq.goal, Or):
                raise _bad(path, "goal is not a disjunction")
            _check(seq.with_goal(seq.goal.right), sub, path + ("sub",))
        case AndR(left, right):
            if not isinstance(seq.goal, And):
                raise _bad(path, "goal is not a conjunction")
            _check(seq.with_goal(seq.goal.left), left, path + ("left",))
            _check(seq.with_goal(seq.goal.right), right, path + ("right",))
        case ImpR(sub):
            if not isinstance(seq.goal, Imp):
                raise _bad(path, "goal is not an implication")
            _check(seq.with_hyp(seq.goal.left).with_goal(seq.goal.right),
                   sub, path + ("sub",))
        case OrL(principal, left, right):
            if not isinstance(principal, Or) or seq.gamma[principal] == 0:
                raise _bad(path, "principal disjunction not in context")
            _check(seq.with_hyp(principal.left), left, path + ("left",))
            _check(seq.with_hyp(principal.right), right, path + ("right",))
        case AndL1(principal, sub):
            if not isinstance(principal, And) or seq.gamma[principal] == 0:
                raise _bad(path, "principal conjunction not in context")
            _check(seq.with_hyp(principal.left), sub, path + ("sub",))
        case AndL2(principal, sub):
            if not isinstance(principal, And) or seq.gamma[principal] == 0:
                raise _bad(path, "principal conjunction not in context")
            _check(seq.with_hyp(principal.right), sub, path + ("sub",))
        case ImpL(principal, arg, body):
            if not isinstance(principal, Imp) or seq.gamma[principal] == 0:
                raise _bad(path, "principal implication not in context")
            _check(seq.with_goal(principal.left), arg, path + ("arg",))
            _check(seq.with_hyp(principal.right), body, path + ("body",))
        case _:
            raise _bad(path, f"not a derivation node: {type(d).__name__}")


# ---------------------------------------------------------------------------
# Admissible structural operations
# ---------------------------------------------------------------------------

def weaken_u(d: UDeriv, extra: UProp) -> UDeriv:
    """Weakening: because checking is membership-based, the tree is reused
    unchanged; it checks at the enlarged sequent with the same skeleton."""
    del extra
    return d


def rule_tags(d: UDeriv) -> Counter:
    """Multiset of rule names in a derivation (the skeleton)."""
    tags: Counter = Counter()
    todo = [d]
    while todo:
        node = todo.pop()
        tags[RULE_NAMES[type(node)]] += 1
        for f in getattr(node, "__dataclass_fields__", {}):
            v = getattr(node, f)
            if not isinstance(v, (Atom, Bot, Or, Top, And, Imp)):
                todo.append(v)
    return tags


def psi_left_lemma(connective: UProp, *derivs: UDeriv, psi_len: int = 0) -> UDeriv:
    """Admissible left rules for a hypothesis landing left of the tail.

    Given premises over the components of `connective` (a conjunction,
    falsehood, or disjunction) with a shared tail, build the derivation
    that instead hypothesizes the connective itself.
    """
    match connective:
        case And(_, _):
            if len(derivs) != 1:
                raise PremiseMismatch("conjunction case takes one premise")
            return _psi_and(connective, derivs[0])
        case Bot():
            if derivs:
                raise PremiseMismatch("falsehood case takes no premises")
            return _psi_bot(psi_len)
        case Or(_, _):
            if len(derivs) != 2:
                raise PremiseMismatch("disjunction case takes two premises")
            return _psi_or(connective, derivs[0], derivs[1])
    raise PremiseMismatch(f"no tail lemma for {print_uprop(connective)}")


def _psi_and(conn: And, d: UDeriv) -> UDeriv:
    # Peel the cons spine, then close with the two projections; the inner
    # derivation is reused as-is (weakening is free).
    match d:
        case PsiCons(sub):
            return PsiCons(_psi_and(conn, sub))
        case PsiNil(sub):
            return PsiNil(AndL2(conn, AndL1(conn, sub)))
    raise PremiseMismatch("premise is not a tail-context derivation")


def _psi_bot(psi_len: int) -> UDeriv:
    d: UDeriv = PsiNil(BotL())
    for _ in range(psi_len):
        d = PsiCons(d)
    return d


def _psi_or(conn: Or, d1: UDeriv, d2: UDeriv) -> UDeriv:
    match d1, d2:
        case PsiCons(s1), PsiCons(s2):
            return PsiCons(_psi_or(conn, s1, s2))
        case PsiNil(s1), PsiNil(s2):
            return PsiNil(OrL(conn, s1, s2))
    raise PremiseMismatch("disjunction premises have mismatched tails")
