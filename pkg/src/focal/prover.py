"""Backward focused proof search, derivation counting, and a countermodel
oracle.

Inversion is deterministic (head of the inversion context first, then the
succedent), so choices arise only at stable sequents (which focus target)
and inside focus phases (which injection, which projection, which value).
Termination comes from a loop check: the canonical form of every stable
sequent on the current branch is remembered, and a repeat prunes the branch.
Since hypotheses only accumulate, canonical stable sequents range over a
finite space and every branch must terminate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from .errors import NotSuspensionNormal
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
    SPos,
    Succedent,
    SuspNeg,
    Top,
    UProp,
    Up,
    Zero,
    is_stable,
)

CanonSequent = tuple[frozenset, Succedent]


@dataclass
class SearchStats:
    stable_visited: int = 0
    prunes: int = 0
    budget_hit: bool = False


def _canonical(ctx: Ctx, su: Succedent) -> CanonSequent:
    hyps = frozenset(
        (isinstance(h, NegHyp), h.prop) for _, h in ctx.items()
    )
    return (hyps, su)


def _distinct_hyps(ctx: Ctx, kind) -> Iterator[tuple[str, object]]:
    """First name per distinct hypothesis type: interchangeable hypotheses
    yield the same derivation, so only one representative is searched."""
    seen = set()
    for name, hyp in ctx.items():
        if isinstance(hyp, kind) and hyp.prop not in seen:
            seen.add(hyp.prop)
            yield name, hyp.prop


class _Search:
    def __init__(self, stats: SearchStats, budget: Optional[int]):
        self.stats = stats
        self.budget = budget
        self.counter = itertools.count()

    def fresh(self, prefix: str) -> str:
        return f"{prefix}{next(self.counter)}"

    def _budget_ok(self) -> bool:
        if self.budget is not None and self.stats.stable_visited >= self.budget:
            self.stats.budget_hit = True
            return False
        return True

    def terms(
        self, ctx: Ctx, omega: Omega, su: Succedent, path: frozenset
    ) -> Iterator[Term]:
        if omega:
            head, rest = omega[0], omega[1:]
            match head:
                case PosAtom(_):
                    z = self.fresh("z")
                    for n in self.terms(ctx.add(z, SuspHyp(head)), rest, su, path):
                        yield SuspendPos(z, head, n)
                case Down(b):
                    x = self.fresh("x")
                    for n in self.terms(ctx.add(x, NegHyp(b)), rest, su, path):
                        yield LetThunk(x, b, n)
                case Zero():
                    yield Abort()
                case POr(left, right):
                    for n1 in self.terms(ctx, (left,) + rest, su, path):
                        for n2 in self.terms(ctx, (right,) + rest, su, path):
                            yield Case(n1, n2)
                case POne():
                    for n in self.terms(ctx, rest, su, path):
                        yield LetUnit(n)
                case PAnd(left, right):
                    for n in self.terms(ctx, (left, right) + rest, su, path):
                        yield LetPair(n)
            return

        match su:
            case INeg(NegAtom(_) as atom):
                for n in self.terms(ctx, (), SuspNeg(atom), path):
                    yield SuspendNeg(n)
            case INeg(Up(b)):
                for n in self.terms(ctx, (), SPos(b), path):
                    yield Ret(n)
            case INeg(NImp(left, right)):
                for n in self.terms(ctx, (left,), INeg(right), path):
                    yield Lam(n)
            case INeg(NTop()):
                yield UnitN()
            case INeg(NAnd(left, right)):
                for n1 in self.terms(ctx, (), INeg(left), path):
                    for n2 in self.terms(ctx, (), INeg(right), path):
                        yield PairN(n1, n2)
            case _:
                yield from self.stable(ctx, su, path)

    def stable(self, ctx: Ctx, su: Succedent, path: frozenset) -> Iterator[Term]:
        key = _canonical(ctx, su)
        if key in path:
            self.stats.prunes += 1
            return
        if not self._budget_ok():
            return
        self.stats.stable_visited += 1
        path = path | {key}
        if isinstance(su, SPos):
            for v in self.values(ctx, su.prop, path):
                yield FocR(v)
        for name, prop in _distinct_hyps(ctx, NegHyp):
            for s in self.spines(ctx, prop, su, path):
                yield FocL(name, s)

    def values(self, ctx: Ctx, a: Pos, path: frozenset) -> Iterator[Value]:
        for name, prop in _distinct_hyps(ctx, SuspHyp):
            if prop == a:
                yield Var(name)
        match a:
            case Down(b):
                for n in self.terms(ctx, (), INeg(b), path):
                    yield Thunk(n)
            case POr(left, right):
                for v in self.values(ctx, left, path):
                    yield Inl(v, right)
                for v in self.values(ctx, right, path):
                    yield Inr(v, left)
            case POne():
                yield UnitP()
            case PAnd(left, right):
                for v1 in self.values(ctx, left, path):
                    for v2 in self.values(ctx, right, path):
                        yield PairP(v1, v2)

    def spines(
        self, ctx: Ctx, a: Neg, su: Succedent, path: frozenset
    ) -> Iterator[Spine]:
        if su == SuspNeg(a):
            yield Nil()
        match a:
            case Up(b):
                for n in self.terms(ctx, (b,), su, path):
                    yield Match(n)
            case NImp(left, right):
                # The argument is searched as a sub-proof on the same path.
                for s in self.spines(ctx, right, su, path):
                    for v in self.values(ctx, left, path):
                        yield App(v, s)
            case NAnd(left, right):
                for s in self.spines(ctx, left, su, path):
                    yield Proj1(s, right)
                for s in self.spines(ctx, right, su, path):
                    yield Proj2(s, left)


def prove(
    ctx: Ctx, su: Succedent, stats: Optional[SearchStats] = None
) -> Optional[Term]:
    """First proof term of ``ctx ; . |- su``, or None if there is none."""
    if not is_suspension_normal(ctx, su):
        raise NotSuspensionNormal("search needs a suspension-normal sequent")
    search = _Search(stats if stats is not None else SearchStats(), budget=None)
    return next(search.terms(ctx, (), su, frozenset()), None)


def count_derivations(
    ctx: Ctx,
    su: Succedent,
    budget: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> tuple[int, bool]:
    """Number of loop-free focused derivations of ``ctx ; . |- su``.

    The count is exact when the search space closed without any path prune
    or budget stop; otherwise it is a lower bound (re-focusing loops make
    the full derivation space infinite).
    """
    if not is_suspension_normal(ctx, su):
        raise NotSuspensionNormal("search needs a suspension-normal sequent")
    stats = stats if stats is not None else SearchStats()
    search = _Search(stats, budget=budget)
    n = sum(1 for _ in search.terms(ctx, (), su, frozenset()))
    exact = stats.prunes == 0 and not stats.budget_hit
    return n, exact


# ---------------------------------------------------------------------------
# Kripke countermodels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KripkeModel:
    """A finite rooted intuitionistic model.

    ``le`` is a reflexive-transitive order on range(size); ``valuation``
    maps each world to the atoms it forces, monotonically along ``le``.
    """

    size: int
    le: frozenset  # of (int, int) pairs
    valuation: tuple  # of frozenset[str], indexed by world
    root: int = 0

    def forces(self, world: int, p: UProp) -> bool:
        match p:
            case Atom(name):
                return name in self.valuation[world]
            case Bot():
                return False
            case Top():
                return True
            case Or(l, r):
                return self.forces(world, l) or self.forces(world, r)
            case And(l, r):
                return self.forces(world, l) and self.forces(world, r)
            case Imp(l, r):
                return all(
                    not self.forces(w, l) or self.forces(w, r)
                    for w in range(self.size)
                    if (world, w) in self.le
                )
        raise TypeError(p)

    def describe(self) -> str:
        lines = [f"worlds: {self.size}, root: w{self.root}"]
        order = sorted(
            (a, b) for (a, b) in self.le if a != b
        )
        lines.append("order: " + (", ".join(f"w{a} <= w{b}" for a, b in order) or "discrete"))
        for w in range(self.size):
            atoms = ", ".join(sorted(self.valuation[w])) or "-"
            lines.append(f"w{w} forces: {atoms}")
        return "\n".join(lines)


def _atoms_of(p: UProp) -> frozenset:
    match p:
        case Atom(name):
            return frozenset([name])
        case Bot() | Top():
            return frozenset()
        case Or(l, r) | And(l, r) | Imp(l, r):
            return _atoms_of(l) | _atoms_of(r)
    raise TypeError(p)


@lru_cache(maxsize=None)
def _models(size: int, atoms: tuple) -> tuple:
    """All models on `size` worlds over `atoms`, root 0 (worlds reached from
    the root only, up to the valuation): preorders that are partial orders,
    times monotone valuations."""
    worlds = range(size)
    pairs = [(a, b) for a in worlds for b in worlds if a != b]
    out = []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = {(w, w) for w in worlds}
        rel.update(p for p, keep in zip(pairs, bits) if keep)
        if any((a, b) in rel and (b, a) in rel for (a, b) in pairs):
            continue  # antisymmetry
        if any(
            (a, b) in rel and (b, c) in rel and (a, c) not in rel
            for a in worlds for b in worlds for c in worlds
        ):
            continue  # transitivity
        upsets = _upward_closed_sets(size, rel)
        for assignment in itertools.product(upsets, repeat=len(atoms)):
            val = tuple(
                frozenset(a for a, s in zip(atoms, assignment) if w in s)
                for w in worlds
            )
            out.append(KripkeModel(size, frozenset(rel), val))
    return tuple(out)


def _upward_closed_sets(size: int, rel: set) -> list[frozenset]:
    out = []
    for bits in itertools.product((False, True), repeat=size):
        s = {w for w, b in enumerate(bits) if b}
        if all((a, b) not in rel or b in s for a in s for b in range(size)):
            out.append(frozenset(s))
    return out


def kripke_refute(p: UProp, max_worlds: int) -> Optional[KripkeModel]:
    """A model whose root fails to force p, if one exists within the world
    bound (brute-force enumeration; max_worlds <= 5)."""
    if max_worlds > 5:
        raise ValueError("countermodel enumeration is bounded at 5 worlds")
    atoms = tuple(sorted(_atoms_of(p)))
    for size in range(1, max_worlds + 1):
        for model in _models(size, atoms):
            for root in range(size):
                if not model.forces(root, p):
                    return KripkeModel(model.size, model.le, model.valuation, root)
    return None
