"""Propositions: unpolarized and polarized syntax, erasure, polarization.

The unpolarized language is plain propositional intuitionistic logic.  The
polarized language splits it into positive and negative propositions mediated
by the shifts ``dn`` (negative into positive) and ``up`` (positive into
negative); erasure deletes the shifts and polarity marks, and a polarization
strategy is a partial inverse of erasure.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import NotSuspensionNormal, ParseError

_ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


def _check_atom(name: str) -> None:
    if not _ATOM_RE.match(name):
        raise ValueError(f"bad atom name: {name!r}")


# ---------------------------------------------------------------------------
# Unpolarized propositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __post_init__(self):
        _check_atom(self.name)


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Or:
    left: "UProp"
    right: "UProp"


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class And:
    left: "UProp"
    right: "UProp"


@dataclass(frozen=True, slots=True)
class Imp:
    left: "UProp"
    right: "UProp"


UProp = Union[Atom, Bot, Or, Top, And, Imp]


# ---------------------------------------------------------------------------
# Polarized propositions (mutually recursive)
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class PosAtom:
    name: str

    def __post_init__(self):
        _check_atom(self.name)


@dataclass(frozen=True, slots=True)
class Down:
    body: "Neg"


@dataclass(frozen=True, slots=True)
class Zero:
    pass


@dataclass(frozen=True, slots=True)
class POr:
    left: "Pos"
    right: "Pos"


@dataclass(frozen=True, slots=True)
class POne:
    pass


@dataclass(frozen=True, slots=True)
class PAnd:
    left: "Pos"
    right: "Pos"


@dataclass(frozen=True, slots=True)
class NegAtom:
    name: str

    def __post_init__(self):
        _check_atom(self.name)


@dataclass(frozen=True, slots=True)
class Up:
    body: "Pos"


@dataclass(frozen=True, slots=True)
class NImp:
    left: "Pos"
    right: "Neg"


@dataclass(frozen=True, slots=True)
class NTop:
    pass


@dataclass(frozen=True, slots=True)
class NAnd:
    left: "Neg"
    right: "Neg"


Pos = Union[PosAtom, Down, Zero, POr, POne, PAnd]
Neg = Union[NegAtom, Up, NImp, NTop, NAnd]
PProp = Union[Pos, Neg]


def uprop_size(p: UProp) -> int:
    match p:
        case Atom(_) | Bot() | Top():
            return 1
        case Or(l, r) | And(l, r) | Imp(l, r):
            return 1 + uprop_size(l) + uprop_size(r)
    raise TypeError(p)


def pprop_size(a: PProp) -> int:
    match a:
        case PosAtom(_) | Zero() | POne() | NegAtom(_) | NTop():
            return 1
        case Down(b) | Up(b):
            return 1 + pprop_size(b)
        case POr(l, r) | PAnd(l, r) | NImp(l, r) | NAnd(l, r):
            return 1 + pprop_size(l) + pprop_size(r)
    raise TypeError(a)


def is_pos(a: PProp) -> bool:
    return isinstance(a, (PosAtom, Down, Zero, POr, POne, PAnd))


def is_neg(a: PProp) -> bool:
    return isinstance(a, (NegAtom, Up, NImp, NTop, NAnd))


# ---------------------------------------------------------------------------
# Succedents
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class RFoc:
    """Right focus succedent [A+]."""

    prop: Pos


@dataclass(frozen=True, slots=True)
class SPos:
    """Stable positive succedent A+."""

    prop: Pos


@dataclass(frozen=True, slots=True)
class INeg:
    """Inversion succedent A-."""

    prop: Neg


@dataclass(frozen=True, slots=True)
class SuspNeg:
    """Suspended succedent <A->."""

    prop: Neg


Succedent = Union[RFoc, SPos, INeg, SuspNeg]


def is_stable(u: Succedent) -> bool:
    """A succedent is stable when no invertible rule applies to it."""
    return isinstance(u, (SPos, SuspNeg))


# ---------------------------------------------------------------------------
# Erasure
# ---------------------------------------------------------------------------

def erase_pos(a: Pos) -> UProp:
    match a:
        case PosAtom(name):
            return Atom(name)
        case Down(b):
            return erase_neg(b)
        case Zero():
            return Bot()
        case POr(l, r):
            return Or(erase_pos(l), erase_pos(r))
        case POne():
            return Top()
        case PAnd(l, r):
            return And(erase_pos(l), erase_pos(r))
    raise TypeError(a)


def erase_neg(a: Neg) -> UProp:
    match a:
        case NegAtom(name):
            return Atom(name)
        case Up(b):
            return erase_pos(b)
        case NImp(l, r):
            return Imp(erase_pos(l), erase_neg(r))
        case NTop():
            return Top()
        case NAnd(l, r):
            return And(erase_neg(l), erase_neg(r))
    raise TypeError(a)


def erase_succ(u: Succedent) -> UProp:
    """Erase a succedent; a suspended succedent must be atomic."""
    match u:
        case RFoc(a) | SPos(a):
            return erase_pos(a)
        case INeg(a):
            return erase_neg(a)
        case SuspNeg(NegAtom(name)):
            return Atom(name)
        case SuspNeg(a):
            raise NotSuspensionNormal(f"suspended non-atomic succedent <{print_pprop(a)}>")
    raise TypeError(u)


# ---------------------------------------------------------------------------
# Polarization strategies
# ---------------------------------------------------------------------------

class Strategy(enum.Enum):
    """How to polarize an unpolarized proposition.

    ALL_NEG makes atoms and both lattice connectives negative; ALL_POS makes
    them positive; FULL_SHIFT makes atoms positive and inserts a shift pair
    at every connective boundary, so that focused proofs mirror unfocused
    ones phase for phase.
    """

    ALL_NEG = "neg"
    ALL_POS = "pos"
    FULL_SHIFT = "fullshift"

    def atom_polarity(self, name: str) -> str:
        _check_atom(name)
        return "negative" if self is Strategy.ALL_NEG else "positive"


def polarize(p: UProp, strategy: Strategy) -> Neg:
    """Translate to a negative proposition; a partial inverse of erasure."""
    if strategy is Strategy.ALL_NEG:
        return _neg_all_neg(p)
    if strategy is Strategy.ALL_POS:
        return _neg_all_pos(p)
    return _neg_full_shift(p)


def polarize_pos(p: UProp, strategy: Strategy) -> Pos:
    """Companion translation used where a positive proposition is needed."""
    if strategy is Strategy.ALL_NEG:
        return Down(_neg_all_neg(p))
    if strategy is Strategy.ALL_POS:
        return _pos_all_pos(p)
    return _pos_full_shift(p)


def _neg_all_neg(p: UProp) -> Neg:
    match p:
        case Atom(name):
            return NegAtom(name)
        case Top():
            return NTop()
        case And(l, r):
            return NAnd(_neg_all_neg(l), _neg_all_neg(r))
        case Imp(l, r):
            return NImp(Down(_neg_all_neg(l)), _neg_all_neg(r))
        case Bot():
            return Up(Zero())
        case Or(l, r):
            return Up(POr(Down(_neg_all_neg(l)), Down(_neg_all_neg(r))))
    raise TypeError(p)


def _pos_all_pos(p: UProp) -> Pos:
    match p:
        case Atom(name):
            return PosAtom(name)
        case Top():
            return POne()
        case And(l, r):
            return PAnd(_pos_all_pos(l), _pos_all_pos(r))
        case Bot():
            return Zero()
        case Or(l, r):
            return POr(_pos_all_pos(l), _pos_all_pos(r))
        case Imp(_, _):
            return Down(_neg_all_pos(p))
    raise TypeError(p)


def _neg_all_pos(p: UProp) -> Neg:
    # An upshift is inserted only where the translation is itself positive.
    match p:
        case Imp(l, r):
            return NImp(_pos_all_pos(l), _neg_all_pos(r))
        case _:
            return Up(_pos_all_pos(p))


def _pos_full_shift(p: UProp) -> Pos:
    match p:
        case Atom(name):
            return PosAtom(name)
        case _:
            return Down(_neg_full_shift(p))


def _stab_full_shift(p: UProp) -> Neg:
    """Boundary wrapper: inverting the result stops at a stable sequent."""
    return Up(_pos_full_shift(p))


def _neg_full_shift(p: UProp) -> Neg:
    match p:
        case Atom(name):
            return Up(PosAtom(name))
        case Bot():
            return Up(Zero())
        case Top():
            return NTop()
        case And(l, r):
            return NAnd(_stab_full_shift(l), _stab_full_shift(r))
        case Imp(l, r):
            return NImp(_pos_full_shift(l), _stab_full_shift(r))
        case Or(l, r):
            return Up(POr(_pos_full_shift(l), _pos_full_shift(r)))
    raise TypeError(p)


# ---------------------------------------------------------------------------
# Concrete syntax: lexer
# ---------------------------------------------------------------------------

_PUNCT = [
    ("->", "->"),
    ("/\\", "/\\"),
    ("\\/", "\\/"),
    ("(", "("),
    (")", ")"),
    ("+", "+"),
    ("*", "*"),
    ("&", "&"),
    ("0", "0"),
    ("1", "1"),
]

_KEYWORDS = {"false", "true", "dn", "up"}


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "T" and not _ident_char(text, i + 1):
            toks.append(_Tok("T", "T", i))
            i += 1
            continue
        for lit, kind in _PUNCT:
            if text.startswith(lit, i):
                toks.append(_Tok(kind, lit, i))
                i += len(lit)
                break
        else:
            m = re.match(r"[a-z][a-zA-Z0-9_]*", text[i:])
            if not m:
                raise ParseError(i, {"proposition"}, repr(c))
            name = m.group(0)
            j = i + len(name)
            if name in _KEYWORDS:
                toks.append(_Tok(name, name, i))
                i = j
                continue
            # A +/- immediately after the name marks a polarized atom,
            # except when the - begins an arrow.
            if j < n and text[j] == "+":
                toks.append(_Tok("posatom", name, i))
                i = j + 1
            elif j < n and text[j] == "-" and not text.startswith("->", j):
                toks.append(_Tok("negatom", name, i))
                i = j + 1
            else:
                toks.append(_Tok("name", name, i))
                i = j
    toks.append(_Tok("eof", "", n))
    return toks


def _ident_char(text: str, i: int) -> bool:
    return i < len(text) and (text[i].isalnum() or text[i] == "_")


class _Cursor:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(t.offset, {kind}, t.text or "end of input")
        return self.next()


# ---------------------------------------------------------------------------
# Unpolarized parser / printer
# ---------------------------------------------------------------------------

def parse_uprop(text: str) -> UProp:
    cur = _Cursor(_tokenize(text))
    p = _u_imp(cur)
    t = cur.peek()
    if t.kind != "eof":
        raise ParseError(t.offset, {"end of input"}, t.text)
    return p


def _u_imp(cur: _Cursor) -> UProp:
    left = _u_or(cur)
    if cur.peek().kind == "->":
        cur.next()
        return Imp(left, _u_imp(cur))
    return left


def _u_or(cur: _Cursor) -> UProp:
    left = _u_and(cur)
    if cur.peek().kind == "\\/":
        cur.next()
        return Or(left, _u_or(cur))
    return left


def _u_and(cur: _Cursor) -> UProp:
    left = _u_primary(cur)
    if cur.peek().kind == "/\\":
        cur.next()
        return And(left, _u_and(cur))
    return left


def _u_primary(cur: _Cursor) -> UProp:
    t = cur.peek()
    match t.kind:
        case "false":
            cur.next()
            return Bot()
        case "true":
            cur.next()
            return Top()
        case "name" | "dn" | "up":
            cur.next()
            return Atom(t.text)
        case "(":
            cur.next()
            p = _u_imp(cur)
            cur.expect(")")
            return p
    raise ParseError(t.offset, {"atom", "false", "true", "("}, t.text or "end of input")


def print_uprop(p: UProp) -> str:
    return _u_print(p, None, False)


def _u_print(p: UProp, parent: type | None, right: bool) -> str:
    match p:
        case Atom(name):
            return name
        case Bot():
            return "false"
        case Top():
            return "true"
        case Or(l, r):
            op, cls = " \\/ ", Or
        case And(l, r):
            op, cls = " /\\ ", And
        case Imp(l, r):
            op, cls = " -> ", Imp
        case _:
            raise TypeError(p)
    s = _u_print(l, cls, False) + op + _u_print(r, cls, True)
    # Canonical form: every compound child is parenthesized except the
    # right-nested spine of the same (right-associative) connective.
    if parent is not None and not (right and parent is cls):
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# Polarized parser / printer
# ---------------------------------------------------------------------------

def parse_pprop(text: str) -> PProp:
    """Parse a polarized proposition, inferring its sort from the syntax."""
    cur = _Cursor(_tokenize(text))
    p = _p_imp(cur)
    t = cur.peek()
    if t.kind != "eof":
        raise ParseError(t.offset, {"end of input"}, t.text)
    return p


def parse_pos(text: str) -> Pos:
    p = parse_pprop(text)
    if not is_pos(p):
        raise ParseError(0, {"positive proposition"}, "negative proposition")
    return p


def parse_neg(text: str) -> Neg:
    p = parse_pprop(text)
    if not is_neg(p):
        raise ParseError(0, {"negative proposition"}, "positive proposition")
    return p


def _want_pos(p: PProp, offset: int) -> Pos:
    if not is_pos(p):
        raise ParseError(offset, {"positive proposition"}, print_pprop(p))
    return p


def _want_neg(p: PProp, offset: int) -> Neg:
    if not is_neg(p):
        raise ParseError(offset, {"negative proposition"}, print_pprop(p))
    return p


def _p_imp(cur: _Cursor) -> PProp:
    start = cur.peek().offset
    left = _p_sum(cur)
    if cur.peek().kind == "->":
        arrow = cur.next()
        right = _p_imp(cur)
        return NImp(_want_pos(left, start), _want_neg(right, arrow.offset))
    return left


def _p_sum(cur: _Cursor) -> PProp:
    start = cur.peek().offset
    left = _p_prod(cur)
    if cur.peek().kind == "+":
        plus = cur.next()
        right = _p_sum(cur)
        return POr(_want_pos(left, start), _want_pos(right, plus.offset))
    return left


def _p_prod(cur: _Cursor) -> PProp:
    start = cur.peek().offset
    left = _p_primary(cur)
    t = cur.peek()
    if t.kind == "*":
        cur.next()
        right = _p_prod(cur)
        return PAnd(_want_pos(left, start), _want_pos(right, t.offset))
    if t.kind == "&":
        cur.next()
        right = _p_prod(cur)
        return NAnd(_want_neg(left, start), _want_neg(right, t.offset))
    return left


def _p_primary(cur: _Cursor) -> PProp:
    t = cur.peek()
    match t.kind:
        case "posatom":
            cur.next()
            return PosAtom(t.text)
        case "negatom":
            cur.next()
            return NegAtom(t.text)
        case "0":
            cur.next()
            return Zero()
        case "1":
            cur.next()
            return POne()
        case "T":
            cur.next()
            return NTop()
        case "dn":
            cur.next()
            inner = _p_primary(cur)
            return Down(_want_neg(inner, t.offset))
        case "up":
            cur.next()
            inner = _p_primary(cur)
            return Up(_want_pos(inner, t.offset))
        case "(":
            cur.next()
            p = _p_imp(cur)
            cur.expect(")")
            return p
    raise ParseError(
        t.offset,
        {"p+", "p-", "0", "1", "T", "dn", "up", "("},
        t.text or "end of input",
    )


def print_pprop(a: PProp) -> str:
    return _p_print(a, None, False)


def _p_print(a: PProp, parent: type | None, right: bool) -> str:
    match a:
        case PosAtom(name):
            return name + "+"
        case NegAtom(name):
            return name + "-"
        case Zero():
            return "0"
        case POne():
            return "1"
        case NTop():
            return "T"
        case Down(b):
            return f"dn({_p_print(b, None, False)})"
        case Up(b):
            return f"up({_p_print(b, None, False)})"
        case POr(l, r):
            op, cls = " + ", POr
        case PAnd(l, r):
            op, cls = " * ", PAnd
        case NAnd(l, r):
            op, cls = " & ", NAnd
        case NImp(l, r):
            op, cls = " -> ", NImp
        case _:
            raise TypeError(a)
    s = _p_print(l, cls, False) + op + _p_print(r, cls, True)
    if parent is not None and not (right and parent is cls):
        return f"({s})"
    return s


def print_succ(u: Succedent) -> str:
    match u:
        case RFoc(a):
            return f"[{print_pprop(a)}]"
        case SPos(a):
            return print_pprop(a)
        case INeg(a):
            return print_pprop(a)
        case SuspNeg(a):
            return f"<{print_pprop(a)}>"
    raise TypeError(u)


# ---------------------------------------------------------------------------
# Enumeration helpers (used by tests and the prover's subformula reasoning)
# ---------------------------------------------------------------------------

def iter_uprops(max_size: int, atoms: tuple[str, ...]) -> Iterator[UProp]:
    """Yield every unpolarized proposition up to the given size."""
    for n in range(1, max_size + 1):
        yield from _iter_uprops_exact(n, atoms)


def _iter_uprops_exact(n: int, atoms: tuple[str, ...]) -> Iterator[UProp]:
    if n == 1:
        for a in atoms:
            yield Atom(a)
        yield Bot()
        yield Top()
        return
    for i in range(1, n - 1):
        for l in _iter_uprops_exact(i, atoms):
            for r in _iter_uprops_exact(n - 1 - i, atoms):
                yield Or(l, r)
                yield And(l, r)
                yield Imp(l, r)
