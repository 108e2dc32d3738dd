"""Hereditary substitution: cut admissibility as four total functions.

The two principal substitutions reduce a value against a left inversion
(``cut_pos``) or a right inversion against a spine (``cut_neg``); rightist
substitution replaces a hypothesis variable, and leftist substitution chases
the commits to right focus in its *first* argument.  Outputs are cut-free by
construction since the term language has no cut node.

Every recursive call strictly decreases the lexicographic measure
(index proposition size, part number, relevant term size); enabling
``metric_checks`` asserts this on the fly.
"""

from __future__ import annotations

import contextlib
import sys
import threading
from typing import Optional, Union

from .errors import NotSuspensionNormal, TypeMismatch
from .kernel import (
    Abort,
    App,
    Case,
    Expr,
    FocL,
    FocR,
    Inl,
    Inr,
    Lam,
    LetPair,
    LetThunk,
    LetUnit,
    Match,
    Nil,
    PairN,
    PairP,
    Proj1,
    Proj2,
    Ret,
    Spine,
    SuspendNeg,
    SuspendPos,
    Term,
    Thunk,
    UnitN,
    UnitP,
    Value,
    Var,
    all_names,
    fresh_name,
    rename_free,
    subst_pos,
    term_size,
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
    pprop_size,
    print_pprop,
)

Metric = tuple[int, int, int]

_metric_enabled = False


@contextlib.contextmanager
def metric_checks():
    """Assert, within the block, that the cut measure decreases on every
    recursive call."""
    global _metric_enabled
    old = _metric_enabled
    _metric_enabled = True
    try:
        yield
    finally:
        _metric_enabled = old


def _step(metric: Metric, parent: Optional[Metric]) -> Optional[Metric]:
    if not _metric_enabled:
        return None
    if parent is not None:
        assert metric < parent, f"cut measure did not decrease: {parent} -> {metric}"
    return metric


# Recursion depth tracks term size; large inputs get a fresh thread with a
# big stack instead of an explicit work list.
_DEEP_THRESHOLD = 2000


def _run_deep(fn, depth_hint: int):
    result: list = []
    error: list = []

    def body():
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * depth_hint + 10000))
        try:
            result.append(fn())
        except BaseException as exc:  # re-raised in the caller
            error.append(exc)

    old_stack = threading.stack_size()
    threading.stack_size(512 * 1024 * 1024)
    try:
        t = threading.Thread(target=body)
        t.start()
        t.join()
    finally:
        threading.stack_size(old_stack)
    if error:
        raise error[0]
    return result[0]


def cut_pos(v: Value, a: Pos, n: Term) -> Term:
    """Principal substitution ``(v . n)`` at the positive proposition a.

    v proves ``G |- [a]`` and n proves ``G ; a, W |- U``; the result proves
    ``G ; W |- U``.  Defined on suspension-normal sequents only.
    """
    hint = term_size(v) + term_size(n)
    if hint > _DEEP_THRESHOLD:
        return _run_deep(lambda: _cut_pos(v, a, n, None), hint)
    return _cut_pos(v, a, n, None)


def cut_neg(m: Term, a: Neg, s: Spine) -> Term:
    """Principal substitution ``(m . s)`` at the negative proposition a."""
    hint = term_size(m) + term_size(s)
    if hint > _DEEP_THRESHOLD:
        return _run_deep(lambda: _cut_neg(m, a, s, None), hint)
    return _cut_neg(m, a, s, None)


def rsubst(m: Term, x: str, a: Neg, e: Expr) -> Expr:
    """Rightist substitution ``[[m/x]]e`` for the hypothesis x : a."""
    hint = term_size(m) + term_size(e)
    if hint > _DEEP_THRESHOLD:
        return _run_deep(lambda: _rsubst(m, x, a, e, None), hint)
    return _rsubst(m, x, a, e, None)


def lsubst(e: Union[Term, Spine], a: Pos, n: Term) -> Union[Term, Spine]:
    """Leftist substitution ``[[e]]n`` along e's stable positive succedent."""
    hint = term_size(e) + term_size(n)
    if hint > _DEEP_THRESHOLD:
        return _run_deep(lambda: _lsubst(e, a, n, None), hint)
    return _lsubst(e, a, n, None)


# ---------------------------------------------------------------------------
# Part 1: value against left inversion
# ---------------------------------------------------------------------------

def _cut_pos(v: Value, a: Pos, n: Term, parent: Optional[Metric]) -> Term:
    me = _step((pprop_size(a), 1, 0), parent)
    match a:
        case PosAtom(_):
            # (z . susp z'.n) = [z/z']n, a plain contraction.
            if not isinstance(v, Var):
                raise TypeMismatch((), "only a variable proves an atom in focus")
            if not isinstance(n, SuspendPos):
                raise TypeMismatch((), "inversion at an atom must suspend")
            return subst_pos(v, n.var, n.body)
        case Down(b):
            if not isinstance(v, Thunk) or not isinstance(n, LetThunk):
                return _principal_mismatch(v, a, n)
            return _rsubst(v.body, n.var, b, n.body, me)
        case POr(left, right):
            if isinstance(v, Inl) and isinstance(n, Case):
                return _cut_pos(v.value, left, n.left, me)
            if isinstance(v, Inr) and isinstance(n, Case):
                return _cut_pos(v.value, right, n.right, me)
            return _principal_mismatch(v, a, n)
        case POne():
            if not isinstance(v, UnitP) or not isinstance(n, LetUnit):
                return _principal_mismatch(v, a, n)
            return n.body
        case PAnd(left, right):
            if not isinstance(v, PairP) or not isinstance(n, LetPair):
                return _principal_mismatch(v, a, n)
            return _cut_pos(v.snd, right, _cut_pos(v.fst, left, n.body, me), me)
        case Zero():
            raise NotSuspensionNormal("no value proves 0 in a suspension-normal sequent")
    raise TypeError(a)


def _principal_mismatch(v: Value, a: Pos, n: Term) -> Term:
    if isinstance(v, Var):
        # The value used a suspended compound hypothesis.
        raise NotSuspensionNormal(
            f"suspended non-atomic hypothesis at {print_pprop(a)}"
        )
    raise TypeMismatch(
        (), f"principal pair {type(v).__name__} / {type(n).__name__} "
            f"at {print_pprop(a)}"
    )


# ---------------------------------------------------------------------------
# Part 2: right inversion against spine
# ---------------------------------------------------------------------------

def _cut_neg(m: Term, a: Neg, s: Spine, parent: Optional[Metric]) -> Term:
    me = _step((pprop_size(a), 2, 0), parent)
    match a:
        case NegAtom(_):
            # (susp m' . nil) = m'.
            if not isinstance(s, Nil):
                raise TypeMismatch((), "atoms admit only the empty spine")
            if not isinstance(m, SuspendNeg):
                raise TypeMismatch((), "inversion at an atom must suspend")
            return m.body
        case Up(b):
            if isinstance(s, Nil):
                raise NotSuspensionNormal("nil at a non-atomic suspension")
            if not isinstance(m, Ret) or not isinstance(s, Match):
                raise TypeMismatch((), "shift mismatch in principal cut")
            return _lsubst(m.body, b, s.body, me)
        case NImp(left, right):
            if isinstance(s, Nil):
                raise NotSuspensionNormal("nil at a non-atomic suspension")
            if not isinstance(m, Lam) or not isinstance(s, App):
                raise TypeMismatch((), "implication mismatch in principal cut")
            return _cut_neg(_cut_pos(s.value, left, m.body, me), right, s.rest, me)
        case NAnd(left, right):
            if isinstance(s, Nil):
                raise NotSuspensionNormal("nil at a non-atomic suspension")
            if isinstance(m, PairN) and isinstance(s, Proj1):
                return _cut_neg(m.fst, left, s.rest, me)
            if isinstance(m, PairN) and isinstance(s, Proj2):
                return _cut_neg(m.snd, right, s.rest, me)
            raise TypeMismatch((), "conjunction mismatch in principal cut")
        case NTop():
            raise NotSuspensionNormal("nil at a non-atomic suspension")
    raise TypeError(a)


# ---------------------------------------------------------------------------
# Part 3: substitution for a negative hypothesis
# ---------------------------------------------------------------------------

def _rsubst(m: Term, x: str, a: Neg, e: Expr, parent: Optional[Metric]) -> Expr:
    me = _step((pprop_size(a), 3, term_size(e)), parent)
    match e:
        case FocL(var, spine) if var == x:
            # The one interesting case: the term focused on x, so the spine
            # is fed to m by a principal cut rather than pasted in.
            return _cut_neg(m, a, _rsubst(m, x, a, spine, me), me)
        case FocL(var, spine):
            return FocL(var, _rsubst(m, x, a, spine, me))
        case Var(_) | UnitP() | Abort() | UnitN() | Nil():
            return e
        case SuspendPos(var, atom, body):
            if var == x:
                return e
            var, body = _avoid_capture(var, body, m, x)
            return SuspendPos(var, atom, _rsubst(m, x, a, body, me))
        case LetThunk(var, ann, body):
            if var == x:
                return e
            var, body = _avoid_capture(var, body, m, x)
            return LetThunk(var, ann, _rsubst(m, x, a, body, me))
        case Thunk(body):
            return Thunk(_rsubst(m, x, a, body, me))
        case Inl(value, other):
            return Inl(_rsubst(m, x, a, value, me), other)
        case Inr(value, other):
            return Inr(_rsubst(m, x, a, value, me), other)
        case PairP(fst, snd):
            return PairP(_rsubst(m, x, a, fst, me), _rsubst(m, x, a, snd, me))
        case FocR(value):
            return FocR(_rsubst(m, x, a, value, me))
        case Case(left, right):
            return Case(_rsubst(m, x, a, left, me), _rsubst(m, x, a, right, me))
        case LetUnit(body):
            return LetUnit(_rsubst(m, x, a, body, me))
        case LetPair(body):
            return LetPair(_rsubst(m, x, a, body, me))
        case SuspendNeg(body):
            return SuspendNeg(_rsubst(m, x, a, body, me))
        case Ret(body):
            return Ret(_rsubst(m, x, a, body, me))
        case Lam(body):
            return Lam(_rsubst(m, x, a, body, me))
        case PairN(fst, snd):
            return PairN(_rsubst(m, x, a, fst, me), _rsubst(m, x, a, snd, me))
        case Match(body):
            return Match(_rsubst(m, x, a, body, me))
        case App(value, rest):
            return App(_rsubst(m, x, a, value, me), _rsubst(m, x, a, rest, me))
        case Proj1(rest, other):
            return Proj1(_rsubst(m, x, a, rest, me), other)
        case Proj2(rest, other):
            return Proj2(_rsubst(m, x, a, rest, me), other)
    raise TypeError(e)


def _avoid_capture(var: str, body: Term, m: Expr, x: str) -> tuple[str, Term]:
    """Rename the binder when it would capture a free variable of m."""
    if var in free_vars_cached(m) or var == x:
        avoid = all_names(m) | all_names(body) | {x}
        var2 = fresh_name(var.rstrip("0123456789") or "v", avoid)
        return var2, rename_free(body, var, var2)
    return var, body


# free_vars is pure; memoize per term identity to keep rsubst near-linear.
_fv_cache: dict[int, tuple[Expr, frozenset[str]]] = {}


def free_vars_cached(e: Expr) -> frozenset[str]:
    from .kernel import free_vars

    key = id(e)
    hit = _fv_cache.get(key)
    if hit is not None and hit[0] is e:
        return hit[1]
    fv = frozenset(free_vars(e))
    if len(_fv_cache) > 4096:
        _fv_cache.clear()
    _fv_cache[key] = (e, fv)
    return fv


# ---------------------------------------------------------------------------
# Part 4: substitution along a stable positive succedent
# ---------------------------------------------------------------------------

def _lsubst(e: Union[Term, Spine], a: Pos, n: Term, parent: Optional[Metric]):
    me = _step((pprop_size(a), 4, term_size(e)), parent)
    match e:
        case FocR(value):
            # The first derivation committed to proving a; reduce.
            return _cut_pos(value, a, n, me)
        case FocL(var, spine):
            return FocL(var, _lsubst(spine, a, n, me))
        case SuspendPos(var, atom, body):
            var, body = _avoid_capture_l(var, body, n)
            return SuspendPos(var, atom, _lsubst(body, a, n, me))
        case LetThunk(var, ann, body):
            var, body = _avoid_capture_l(var, body, n)
            return LetThunk(var, ann, _lsubst(body, a, n, me))
        case Abort():
            return e
        case Case(left, right):
            return Case(_lsubst(left, a, n, me), _lsubst(right, a, n, me))
        case LetUnit(body):
            return LetUnit(_lsubst(body, a, n, me))
        case LetPair(body):
            return LetPair(_lsubst(body, a, n, me))
        case Match(body):
            return Match(_lsubst(body, a, n, me))
        case App(value, rest):
            return App(value, _lsubst(rest, a, n, me))
        case Proj1(rest, other):
            return Proj1(_lsubst(rest, a, n, me), other)
        case Proj2(rest, other):
            return Proj2(_lsubst(rest, a, n, me), other)
        case Nil():
            raise TypeMismatch((), "nil cannot prove a positive succedent")
        case _:
            raise TypeMismatch(
                (), f"{type(e).__name__} cannot prove a stable positive succedent"
            )


def _avoid_capture_l(var: str, body: Term, n: Term) -> tuple[str, Term]:
    if var in free_vars_cached(n):
        avoid = all_names(n) | all_names(body)
        var2 = fresh_name(var.rstrip("0123456789") or "v", avoid)
        return var2, rename_free(body, var, var2)
    return var, body
