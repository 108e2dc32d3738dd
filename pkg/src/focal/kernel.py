"""Proof terms in spine form and the checker for focused derivations.

Values, terms and spines mirror the three sequent forms: a value proves a
right-focus sequent ``G |- [A+]``, a term proves an inversion sequent
``G ; W |- U`` (W an ordered inversion context, consumed left to right), and
a spine proves a left-focus sequent ``G ; [A-] |- U``.  Terms carry just
enough annotations (binder types and the branch not taken) to be in 1-to-1
correspondence with derivations, so checking is deterministic and requires
no search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import (
    NotStable,
    OmegaNonEmpty,
    TypeMismatch,
    UnboundVariable,
    WrongSort,
)
from .syntax import (
    INeg,
    NAnd,
    Down,
    NegAtom,
    NImp,
    NTop,
    PAnd,
    POne,
    POr,
    Pos,
    PosAtom,
    Neg,
    RFoc,
    SPos,
    Succedent,
    SuspNeg,
    Up,
    Zero,
    is_stable,
    print_pprop,
)

# ---------------------------------------------------------------------------
# Hypotheses and contexts
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class NegHyp:
    """An ordinary hypothesis x : A-."""

    prop: Neg


@dataclass(frozen=True, slots=True)
class SuspHyp:
    """A suspended hypothesis z : <A+>."""

    prop: Pos


Hyp = Union[NegHyp, SuspHyp]


class Ctx:
    """An immutable name -> hypothesis map; order never affects checking."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[tuple[str, Hyp]] = ()):
        d: dict[str, Hyp] = {}
        for name, hyp in entries:
            d[name] = hyp
        self._entries = d

    @staticmethod
    def empty() -> "Ctx":
        return Ctx()

    def add(self, name: str, hyp: Hyp) -> "Ctx":
        new = Ctx()
        new._entries = dict(self._entries)
        new._entries[name] = hyp
        return new

    def get(self, name: str) -> Hyp | None:
        return self._entries.get(name)

    def items(self) -> Iterator[tuple[str, Hyp]]:
        return iter(self._entries.items())

    def names(self) -> Iterator[str]:
        return iter(self._entries)

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ctx) and self._entries == other._entries

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{n}:{print_pprop(h.prop)}" if isinstance(h, NegHyp)
            else f"{n}:<{print_pprop(h.prop)}>"
            for n, h in self._entries.items()
        )
        return f"Ctx({inner})"


Omega = tuple[Pos, ...]


def is_suspension_normal(ctx: Ctx, u: Succedent) -> bool:
    """Every suspension in the sequent is atomic."""
    for _, hyp in ctx.items():
        if isinstance(hyp, SuspHyp) and not isinstance(hyp.prop, PosAtom):
            return False
    if isinstance(u, SuspNeg) and not isinstance(u.prop, NegAtom):
        return False
    return True


# ---------------------------------------------------------------------------
# Values / terms / spines
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Thunk:
    body: "Term"


@dataclass(frozen=True, slots=True)
class Inl:
    value: "Value"
    other: Pos  # the right branch, not taken


@dataclass(frozen=True, slots=True)
class Inr:
    value: "Value"
    other: Pos  # the left branch, not taken


@dataclass(frozen=True, slots=True)
class UnitP:
    pass


@dataclass(frozen=True, slots=True)
class PairP:
    fst: "Value"
    snd: "Value"


@dataclass(frozen=True, slots=True)
class FocR:
    value: "Value"


@dataclass(frozen=True, slots=True)
class FocL:
    var: str
    spine: "Spine"


@dataclass(frozen=True, slots=True)
class SuspendPos:
    var: str
    atom: Pos  # type of the bound suspension; the rule demands an atom
    body: "Term"


@dataclass(frozen=True, slots=True)
class LetThunk:
    var: str
    ann: Neg
    body: "Term"


@dataclass(frozen=True, slots=True)
class Abort:
    pass


@dataclass(frozen=True, slots=True)
class Case:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class LetUnit:
    body: "Term"


@dataclass(frozen=True, slots=True)
class LetPair:
    body: "Term"


@dataclass(frozen=True, slots=True)
class SuspendNeg:
    body: "Term"


@dataclass(frozen=True, slots=True)
class Ret:
    body: "Term"


@dataclass(frozen=True, slots=True)
class Lam:
    body: "Term"


@dataclass(frozen=True, slots=True)
class UnitN:
    pass


@dataclass(frozen=True, slots=True)
class PairN:
    fst: "Term"
    snd: "Term"


@dataclass(frozen=True, slots=True)
class Nil:
    pass


@dataclass(frozen=True, slots=True)
class Match:
    body: "Term"


@dataclass(frozen=True, slots=True)
class App:
    value: "Value"
    rest: "Spine"


@dataclass(frozen=True, slots=True)
class Proj1:
    rest: "Spine"
    other: Neg  # the second component, not taken


@dataclass(frozen=True, slots=True)
class Proj2:
    rest: "Spine"
    other: Neg  # the first component, not taken


Value = Union[Var, Thunk, Inl, Inr, UnitP, PairP]
Term = Union[
    FocR, FocL, SuspendPos, LetThunk, Abort, Case, LetUnit, LetPair,
    SuspendNeg, Ret, Lam, UnitN, PairN,
]
Spine = Union[Nil, Match, App, Proj1, Proj2]
Expr = Union[Value, Term, Spine]

_CHILD_FIELDS = {
    Var: (), UnitP: (), Abort: (), UnitN: (), Nil: (),
    Thunk: ("body",), Inl: ("value",), Inr: ("value",),
    PairP: ("fst", "snd"),
    FocR: ("value",), FocL: ("spine",),
    SuspendPos: ("body",), LetThunk: ("body",),
    Case: ("left", "right"), LetUnit: ("body",), LetPair: ("body",),
    SuspendNeg: ("body",), Ret: ("body",), Lam: ("body",),
    PairN: ("fst", "snd"),
    Match: ("body",), App: ("value", "rest"),
    Proj1: ("rest",), Proj2: ("rest",),
}


def term_size(e: Expr) -> int:
    """Node count, computed with an explicit work list (inputs may be deep)."""
    n = 0
    todo = [e]
    while todo:
        x = todo.pop()
        n += 1
        for f in _CHILD_FIELDS[type(x)]:
            todo.append(getattr(x, f))
    return n


def free_vars(e: Expr) -> set[str]:
    out: set[str] = set()
    # (node, bound-name stack) pairs; bound sets shared structurally.
    todo: list[tuple[Expr, frozenset[str]]] = [(e, frozenset())]
    while todo:
        x, bound = todo.pop()
        match x:
            case Var(name):
                if name not in bound:
                    out.add(name)
            case FocL(name, spine):
                if name not in bound:
                    out.add(name)
                todo.append((spine, bound))
            case SuspendPos(var, _, body) | LetThunk(var, _, body):
                todo.append((body, bound | {var}))
            case _:
                for f in _CHILD_FIELDS[type(x)]:
                    todo.append((getattr(x, f), bound))
    return out


def all_names(e: Expr) -> set[str]:
    """Every variable name occurring in e, free or bound."""
    out: set[str] = set()
    todo: list[Expr] = [e]
    while todo:
        x = todo.pop()
        match x:
            case Var(name):
                out.add(name)
            case FocL(name, spine):
                out.add(name)
                todo.append(spine)
            case SuspendPos(var, _, body) | LetThunk(var, _, body):
                out.add(var)
                todo.append(body)
            case _:
                for f in _CHILD_FIELDS[type(x)]:
                    todo.append(getattr(x, f))
    return out


class NameSupply:
    """Deterministic fresh-name generator with an explicit counter."""

    def __init__(self, avoid: Iterable[str] = (), start: int = 0):
        self._avoid = set(avoid)
        self._counter = start

    def fresh(self, prefix: str = "x") -> str:
        while True:
            name = f"{prefix}{self._counter}"
            self._counter += 1
            if name not in self._avoid:
                self._avoid.add(name)
                return name

    def reserve(self, names: Iterable[str]) -> None:
        self._avoid.update(names)


def fresh_name(prefix: str, avoid: set[str]) -> str:
    """Smallest `prefix<n>` not in `avoid`; the set is extended with it."""
    n = 0
    while f"{prefix}{n}" in avoid:
        n += 1
    name = f"{prefix}{n}"
    avoid.add(name)
    return name


# ---------------------------------------------------------------------------
# Checker
# ---------------------------------------------------------------------------

def check_value(ctx: Ctx, v: Value, a: Pos) -> None:
    """Check ``G |- v : [a]``; raises a CheckError subclass on failure."""
    _check_value(ctx, v, a, ())


def check_term(ctx: Ctx, omega: Omega, n: Term, u: Succedent) -> None:
    """Check ``G ; omega |- n : u`` with omega consumed left to right."""
    if isinstance(u, RFoc):
        raise WrongSort((), "inversion succedent cannot be a right focus")
    _check_term(ctx, tuple(omega), n, u, ())


def check_spine(ctx: Ctx, s: Spine, a: Neg, u: Succedent) -> None:
    """Check ``G ; [a] |- s : u``; u must be stable."""
    if not is_stable(u):
        raise NotStable((), "left focus requires a stable succedent")
    _check_spine(ctx, s, a, u, ())


def checks_value(ctx: Ctx, v: Value, a: Pos) -> bool:
    try:
        check_value(ctx, v, a)
        return True
    except (TypeMismatch, UnboundVariable, WrongSort, NotStable, OmegaNonEmpty):
        return False


def checks_term(ctx: Ctx, omega: Omega, n: Term, u: Succedent) -> bool:
    try:
        check_term(ctx, omega, n, u)
        return True
    except (TypeMismatch, UnboundVariable, WrongSort, NotStable, OmegaNonEmpty):
        return False


def checks_spine(ctx: Ctx, s: Spine, a: Neg, u: Succedent) -> bool:
    try:
        check_spine(ctx, s, a, u)
        return True
    except (TypeMismatch, UnboundVariable, WrongSort, NotStable, OmegaNonEmpty):
        return False


def _check_value(ctx: Ctx, v: Value, a: Pos, path: tuple[str, ...]) -> None:
    match v:
        case Var(name):
            hyp = ctx.get(name)
            if hyp is None:
                raise UnboundVariable(path, f"unbound variable {name}")
            if not isinstance(hyp, SuspHyp):
                raise WrongSort(path, f"{name} is not a suspended hypothesis")
            if hyp.prop != a:
                raise TypeMismatch(
                    path,
                    f"{name} : <{print_pprop(hyp.prop)}> used at {print_pprop(a)}",
                )
        case Thunk(body):
            if not isinstance(a, Down):
                raise TypeMismatch(path, f"thunk at non-shift type {print_pprop(a)}")
            _check_term(ctx, (), body, INeg(a.body), path + ("body",))
        case Inl(value, other):
            if not isinstance(a, POr):
                raise TypeMismatch(path, f"inl at non-sum type {print_pprop(a)}")
            if other != a.right:
                raise TypeMismatch(path, "inl branch annotation mismatch")
            _check_value(ctx, value, a.left, path + ("value",))
        case Inr(value, other):
            if not isinstance(a, POr):
                raise TypeMismatch(path, f"inr at non-sum type {print_pprop(a)}")
            if other != a.left:
                raise TypeMismatch(path, "inr branch annotation mismatch")
            _check_value(ctx, value, a.right, path + ("value",))
        case UnitP():
            if not isinstance(a, POne):
                raise TypeMismatch(path, f"unit value at type {print_pprop(a)}")
        case PairP(fst, snd):
            if not isinstance(a, PAnd):
                raise TypeMismatch(path, f"pair at non-product type {print_pprop(a)}")
            _check_value(ctx, fst, a.left, path + ("fst",))
            _check_value(ctx, snd, a.right, path + ("snd",))
        case _:
            raise WrongSort(path, f"not a value: {type(v).__name__}")


def _check_term(
    ctx: Ctx, omega: Omega, n: Term, u: Succedent, path: tuple[str, ...]
) -> None:
    match n:
        # Focusing: only at a stable succedent with the inversion done.
        case FocR(value):
            if omega:
                raise OmegaNonEmpty(path, "focus under a nonempty inversion context")
            if isinstance(u, INeg):
                raise NotStable(path, "right focus under an inversion succedent")
            if not isinstance(u, SPos):
                raise TypeMismatch(path, "right focus needs a positive succedent")
            _check_value(ctx, value, u.prop, path + ("value",))
        case FocL(var, spine):
            if omega:
                raise OmegaNonEmpty(path, "focus under a nonempty inversion context")
            if not is_stable(u):
                raise NotStable(path, "left focus under a non-stable succedent")
            hyp = ctx.get(var)
            if hyp is None:
                raise UnboundVariable(path, f"unbound variable {var}")
            if not isinstance(hyp, NegHyp):
                raise WrongSort(path, f"{var} is a suspension, cannot focus on it")
            _check_spine(ctx, spine, hyp.prop, u, path + ("spine",))

        # Left inversion: decompose the head of omega.
        case SuspendPos(var, atom, body):
            if not omega:
                raise TypeMismatch(path, "suspension with nothing to invert")
            head = omega[0]
            if not isinstance(head, PosAtom):
                raise TypeMismatch(
                    path, f"may only suspend an atom, found {print_pprop(head)}"
                )
            if atom != head:
                raise TypeMismatch(path, "suspension annotation mismatch")
            _check_term(ctx.add(var, SuspHyp(head)), omega[1:], body, u, path + ("body",))
        case LetThunk(var, ann, body):
            if not omega or not isinstance(omega[0], Down):
                raise TypeMismatch(path, "no shifted head to open")
            if ann != omega[0].body:
                raise TypeMismatch(path, "binder annotation mismatch")
            _check_term(ctx.add(var, NegHyp(ann)), omega[1:], body, u, path + ("body",))
        case Abort():
            if not omega or not isinstance(omega[0], Zero):
                raise TypeMismatch(path, "abort needs 0 at the head")
        case Case(left, right):
            if not omega or not isinstance(omega[0], POr):
                raise TypeMismatch(path, "case needs a sum at the head")
            head = omega[0]
            _check_term(ctx, (head.left,) + omega[1:], left, u, path + ("left",))
            _check_term(ctx, (head.right,) + omega[1:], right, u, path + ("right",))
        case LetUnit(body):
            if not omega or not isinstance(omega[0], POne):
                raise TypeMismatch(path, "unit elimination needs 1 at the head")
            _check_term(ctx, omega[1:], body, u, path + ("body",))
        case LetPair(body):
            if not omega or not isinstance(omega[0], PAnd):
                raise TypeMismatch(path, "pair elimination needs a product at the head")
            head = omega[0]
            _check_term(
                ctx, (head.left, head.right) + omega[1:], body, u, path + ("body",)
            )

        # Right inversion: omega must be exhausted first.
        case SuspendNeg(body):
            if omega:
                raise OmegaNonEmpty(path, "right inversion with pending left inversion")
            if not isinstance(u, INeg) or not isinstance(u.prop, NegAtom):
                raise TypeMismatch(path, "may only suspend an atomic succedent")
            _check_term(ctx, (), body, SuspNeg(u.prop), path + ("body",))
        case Ret(body):
            if omega:
                raise OmegaNonEmpty(path, "right inversion with pending left inversion")
            if not isinstance(u, INeg) or not isinstance(u.prop, Up):
                raise TypeMismatch(path, "return needs an upshifted succedent")
            _check_term(ctx, (), body, SPos(u.prop.body), path + ("body",))
        case Lam(body):
            if omega:
                raise OmegaNonEmpty(path, "right inversion with pending left inversion")
            if not isinstance(u, INeg) or not isinstance(u.prop, NImp):
                raise TypeMismatch(path, "lambda needs an implication succedent")
            imp = u.prop
            _check_term(ctx, (imp.left,), body, INeg(imp.right), path + ("body",))
        case UnitN():
            if omega:
                raise OmegaNonEmpty(path, "right inversion with pending left inversion")
            if not isinstance(u, INeg) or not isinstance(u.prop, NTop):
                raise TypeMismatch(path, "negative unit at wrong succedent")
        case PairN(fst, snd):
            if omega:
                raise OmegaNonEmpty(path, "right inversion with pending left inversion")
            if not isinstance(u, INeg) or not isinstance(u.prop, NAnd):
                raise TypeMismatch(path, "negative pair at wrong succedent")
            conj = u.prop
            _check_term(ctx, (), fst, INeg(conj.left), path + ("fst",))
            _check_term(ctx, (), snd, INeg(conj.right), path + ("snd",))
        case _:
            raise WrongSort(path, f"not a term: {type(n).__name__}")


def _check_spine(
    ctx: Ctx, s: Spine, a: Neg, u: Succedent, path: tuple[str, ...]
) -> None:
    match s:
        case Nil():
            if u != SuspNeg(a):
                raise TypeMismatch(
                    path,
                    f"nil discharges <{print_pprop(a)}>, succedent is "
                    f"{_describe_succ(u)}",
                )
        case Match(body):
            if not isinstance(a, Up):
                raise TypeMismatch(path, f"match on non-shift {print_pprop(a)}")
            _check_term(ctx, (a.body,), body, u, path + ("body",))
        case App(value, rest):
            if not isinstance(a, NImp):
                raise TypeMismatch(path, f"application at {print_pprop(a)}")
            _check_value(ctx, value, a.left, path + ("value",))
            _check_spine(ctx, rest, a.right, u, path + ("rest",))
        case Proj1(rest, other):
            if not isinstance(a, NAnd):
                raise TypeMismatch(path, f"projection at {print_pprop(a)}")
            if other != a.right:
                raise TypeMismatch(path, "projection annotation mismatch")
            _check_spine(ctx, rest, a.left, u, path + ("rest",))
        case Proj2(rest, other):
            if not isinstance(a, NAnd):
                raise TypeMismatch(path, f"projection at {print_pprop(a)}")
            if other != a.left:
                raise TypeMismatch(path, "projection annotation mismatch")
            _check_spine(ctx, rest, a.right, u, path + ("rest",))
        case _:
            raise WrongSort(path, f"not a spine: {type(s).__name__}")


def _describe_succ(u: Succedent) -> str:
    from .syntax import print_succ

    return print_succ(u)


# ---------------------------------------------------------------------------
# Focal substitutions
# ---------------------------------------------------------------------------

def subst_pos(v: Value, z: str, e: Expr) -> Expr:
    """[v/z]e: replace the suspension variable z by the value v."""
    avoid = free_vars(v) | {z}
    return _subst_pos(v, z, e, avoid)


def _subst_pos(v: Value, z: str, e: Expr, avoid: set[str]) -> Expr:
    match e:
        case Var(name):
            return v if name == z else e
        case SuspendPos(var, atom, body):
            if var == z:
                return e
            if var in avoid:
                var2 = fresh_name(var.rstrip("0123456789") or "z", avoid | all_names(body))
                body = rename_free(body, var, var2)
                var = var2
            return SuspendPos(var, atom, _subst_pos(v, z, body, avoid))
        case LetThunk(var, ann, body):
            if var == z:
                return e
            if var in avoid:
                var2 = fresh_name(var.rstrip("0123456789") or "x", avoid | all_names(body))
                body = rename_free(body, var, var2)
                var = var2
            return LetThunk(var, ann, _subst_pos(v, z, body, avoid))
        case _:
            return _map_children(e, lambda c: _subst_pos(v, z, c, avoid))


def subst_neg(e: Term, s: Spine) -> Term:
    """[e]s: splice the spine s onto every nil that discharges e's suspension."""
    avoid = free_vars(s)
    return _subst_neg_term(e, s, avoid)


def _subst_neg_term(e: Term, s: Spine, avoid: set[str]) -> Term:
    # Only positions whose succedent is still the distinguished suspension
    # are rewritten; binders along the way must not capture s.
    match e:
        case FocL(var, spine):
            return FocL(var, _subst_neg_spine(spine, s, avoid))
        case SuspendPos(var, atom, body):
            if var in avoid:
                var2 = fresh_name(var.rstrip("0123456789") or "z", avoid | all_names(body))
                body = rename_free(body, var, var2)
                var = var2
            return SuspendPos(var, atom, _subst_neg_term(body, s, avoid))
        case LetThunk(var, ann, body):
            if var in avoid:
                var2 = fresh_name(var.rstrip("0123456789") or "x", avoid | all_names(body))
                body = rename_free(body, var, var2)
                var = var2
            return LetThunk(var, ann, _subst_neg_term(body, s, avoid))
        case Abort():
            return e
        case Case(left, right):
            return Case(
                _subst_neg_term(left, s, avoid), _subst_neg_term(right, s, avoid)
            )
        case LetUnit(body):
            return LetUnit(_subst_neg_term(body, s, avoid))
        case LetPair(body):
            return LetPair(_subst_neg_term(body, s, avoid))
        case _:
            raise WrongSort(
                (), f"{type(e).__name__} cannot prove a suspended succedent"
            )


def _subst_neg_spine(sp: Spine, s: Spine, avoid: set[str]) -> Spine:
    match sp:
        case Nil():
            return s
        case Match(body):
            return Match(_subst_neg_term(body, s, avoid))
        case App(value, rest):
            return App(value, _subst_neg_spine(rest, s, avoid))
        case Proj1(rest, other):
            return Proj1(_subst_neg_spine(rest, s, avoid), other)
        case Proj2(rest, other):
            return Proj2(_subst_neg_spine(rest, s, avoid), other)
    raise TypeError(sp)


def rename_free(e: Expr, old: str, new: str) -> Expr:
    """Rename a free variable (either kind); assumes new is not captured."""
    match e:
        case Var(name):
            return Var(new) if name == old else e
        case FocL(var, spine):
            return FocL(new if var == old else var, rename_free(spine, old, new))
        case SuspendPos(var, atom, body):
            if var == old:
                return e
            return SuspendPos(var, atom, rename_free(body, old, new))
        case LetThunk(var, ann, body):
            if var == old:
                return e
            return LetThunk(var, ann, rename_free(body, old, new))
        case _:
            return _map_children(e, lambda c: rename_free(c, old, new))


def _map_children(e: Expr, f) -> Expr:
    match e:
        case Var(_) | UnitP() | Abort() | UnitN() | Nil():
            return e
        case Thunk(body):
            return Thunk(f(body))
        case Inl(value, other):
            return Inl(f(value), other)
        case Inr(value, other):
            return Inr(f(value), other)
        case PairP(fst, snd):
            return PairP(f(fst), f(snd))
        case FocR(value):
            return FocR(f(value))
        case FocL(var, spine):
            return FocL(var, f(spine))
        case SuspendPos(var, atom, body):
            return SuspendPos(var, atom, f(body))
        case LetThunk(var, ann, body):
            return LetThunk(var, ann, f(body))
        case Case(left, right):
            return Case(f(left), f(right))
        case LetUnit(body):
            return LetUnit(f(body))
        case LetPair(body):
            return LetPair(f(body))
        case SuspendNeg(body):
            return SuspendNeg(f(body))
        case Ret(body):
            return Ret(f(body))
        case Lam(body):
            return Lam(f(body))
        case PairN(fst, snd):
            return PairN(f(fst), f(snd))
        case Match(body):
            return Match(f(body))
        case App(value, rest):
            return App(f(value), f(rest))
        case Proj1(rest, other):
            return Proj1(f(rest), other)
        case Proj2(rest, other):
            return Proj2(f(rest), other)
    raise TypeError(e)


# ---------------------------------------------------------------------------
# Alpha equality and pretty printing
# ---------------------------------------------------------------------------

def alpha_eq(e1: Expr, e2: Expr) -> bool:
    """Structural equality up to renaming of bound variables."""
    return _alpha(e1, e2, {}, {}, 0)


def _alpha(
    e1: Expr, e2: Expr, m1: dict[str, int], m2: dict[str, int], depth: int
) -> bool:
    if type(e1) is not type(e2):
        return False
    match e1, e2:
        case Var(a), Var(b):
            return _same_name(a, b, m1, m2)
        case FocL(a, s1), FocL(b, s2):
            return _same_name(a, b, m1, m2) and _alpha(s1, s2, m1, m2, depth)
        case SuspendPos(a, t1, b1), SuspendPos(b, t2, b2):
            if t1 != t2:
                return False
            return _alpha(b1, b2, {**m1, a: depth}, {**m2, b: depth}, depth + 1)
        case LetThunk(a, t1, b1), LetThunk(b, t2, b2):
            if t1 != t2:
                return False
            return _alpha(b1, b2, {**m1, a: depth}, {**m2, b: depth}, depth + 1)
        case _:
            fields = _CHILD_FIELDS[type(e1)]
            for f in fields:
                if not _alpha(getattr(e1, f), getattr(e2, f), m1, m2, depth):
                    return False
            # non-child annotation fields must match exactly
            for f in ("other",):
                if hasattr(e1, f) and getattr(e1, f) != getattr(e2, f):
                    return False
            return True


def _same_name(a: str, b: str, m1: dict[str, int], m2: dict[str, int]) -> bool:
    if a in m1 or b in m2:
        return m1.get(a) == m2.get(b) and a in m1 and b in m2
    return a == b


def print_term(e: Expr) -> str:
    """Compact human notation; annotations are suppressed."""
    match e:
        case Var(name):
            return name
        case Thunk(body):
            return f"thunk({print_term(body)})"
        case Inl(value, _):
            return f"inl({print_term(value)})"
        case Inr(value, _):
            return f"inr({print_term(value)})"
        case UnitP():
            return "<>+"
        case PairP(fst, snd):
            return f"<{print_term(fst)}, {print_term(snd)}>+"
        case FocR(value):
            return f"rfoc({print_term(value)})"
        case FocL(var, Nil()):
            return f"{var}.nil"
        case FocL(var, spine):
            return f"{var}.({print_term(spine)})"
        case SuspendPos(var, _, body):
            return f"susp+({var}. {print_term(body)})"
        case LetThunk(var, _, body):
            return f"letdn({var}. {print_term(body)})"
        case Abort():
            return "abort"
        case Case(left, right):
            return f"case({print_term(left)}, {print_term(right)})"
        case LetUnit(body):
            return f"let1({print_term(body)})"
        case LetPair(body):
            return f"let*({print_term(body)})"
        case SuspendNeg(body):
            return f"susp-({print_term(body)})"
        case Ret(body):
            return f"ret({print_term(body)})"
        case Lam(body):
            return f"lam({print_term(body)})"
        case UnitN():
            return "<>-"
        case PairN(fst, snd):
            return f"<{print_term(fst)}, {print_term(snd)}>-"
        case Nil():
            return "nil"
        case Match(body):
            return f"match({print_term(body)})"
        case App(value, rest):
            return f"{print_term(value)}; {print_term(rest)}"
        case Proj1(rest, _):
            return f"pi1; {print_term(rest)}"
        case Proj2(rest, _):
            return f"pi2; {print_term(rest)}"
    raise TypeError(e)
