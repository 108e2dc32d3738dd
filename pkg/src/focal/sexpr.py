"""S-expression serialization: one head symbol per constructor.

The reader produces nested lists of strings; the per-sort decoders turn
them into syntax.  The symbol tables here are the on-disk format contract
and are documented in the README.
"""

from __future__ import annotations

from typing import Union

from . import kernel as k
from . import syntax as sx
from . import unfocused as u
from .errors import ParseError

SExp = Union[str, list]


# ---------------------------------------------------------------------------
# Reader / writer
# ---------------------------------------------------------------------------

def read_sexp(text: str) -> SExp:
    toks = _tokenize(text)
    sexp, pos = _read(toks, 0)
    if pos != len(toks):
        raise ParseError(toks[pos][1], {"end of input"}, toks[pos][0])
    return sexp


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            out.append((c, i))
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            out.append((text[i:j], i))
            i = j
    return out


def _read(toks: list[tuple[str, int]], pos: int) -> tuple[SExp, int]:
    if pos >= len(toks):
        raise ParseError(0, {"s-expression"}, "end of input")
    tok, off = toks[pos]
    if tok == "(":
        items = []
        pos += 1
        while True:
            if pos >= len(toks):
                raise ParseError(off, {")"}, "end of input")
            if toks[pos][0] == ")":
                return items, pos + 1
            item, pos = _read(toks, pos)
            items.append(item)
    if tok == ")":
        raise ParseError(off, {"s-expression"}, ")")
    return tok, pos + 1


def write_sexp(s: SExp) -> str:
    if isinstance(s, str):
        return s
    return "(" + " ".join(write_sexp(x) for x in s) + ")"


def _head(s: SExp, offset_hint: str) -> tuple[str, list]:
    if isinstance(s, str):
        return s, []
    if not s or not isinstance(s[0], str):
        raise ParseError(0, {offset_hint}, write_sexp(s))
    return s[0], s[1:]


def _arity(head: str, args: list, n: int) -> list:
    if len(args) != n:
        raise ParseError(0, {f"{head} with {n} arguments"}, f"{len(args)} arguments")
    return args


# ---------------------------------------------------------------------------
# Propositions
# ---------------------------------------------------------------------------

def uprop_to_sexp(p: sx.UProp) -> SExp:
    match p:
        case sx.Atom(name):
            return name
        case sx.Bot():
            return "bot"
        case sx.Top():
            return "top"
        case sx.Or(l, r):
            return ["or", uprop_to_sexp(l), uprop_to_sexp(r)]
        case sx.And(l, r):
            return ["and", uprop_to_sexp(l), uprop_to_sexp(r)]
        case sx.Imp(l, r):
            return ["imp", uprop_to_sexp(l), uprop_to_sexp(r)]
    raise TypeError(p)


def uprop_from_sexp(s: SExp) -> sx.UProp:
    head, args = _head(s, "proposition")
    match head:
        case "bot":
            return sx.Bot()
        case "top":
            return sx.Top()
        case "or":
            a, b = _arity(head, args, 2)
            return sx.Or(uprop_from_sexp(a), uprop_from_sexp(b))
        case "and":
            a, b = _arity(head, args, 2)
            return sx.And(uprop_from_sexp(a), uprop_from_sexp(b))
        case "imp":
            a, b = _arity(head, args, 2)
            return sx.Imp(uprop_from_sexp(a), uprop_from_sexp(b))
        case _:
            _arity(head, args, 0)
            return sx.Atom(head)


def pprop_to_sexp(a: sx.PProp) -> SExp:
    match a:
        case sx.PosAtom(name):
            return name + "+"
        case sx.NegAtom(name):
            return name + "-"
        case sx.Zero():
            return "0"
        case sx.POne():
            return "1"
        case sx.NTop():
            return "T"
        case sx.Down(b):
            return ["dn", pprop_to_sexp(b)]
        case sx.Up(b):
            return ["up", pprop_to_sexp(b)]
        case sx.POr(l, r):
            return ["+", pprop_to_sexp(l), pprop_to_sexp(r)]
        case sx.PAnd(l, r):
            return ["*", pprop_to_sexp(l), pprop_to_sexp(r)]
        case sx.NAnd(l, r):
            return ["&", pprop_to_sexp(l), pprop_to_sexp(r)]
        case sx.NImp(l, r):
            return ["->", pprop_to_sexp(l), pprop_to_sexp(r)]
    raise TypeError(a)


def pprop_from_sexp(s: SExp) -> sx.PProp:
    head, args = _head(s, "polarized proposition")
    match head:
        case "0":
            return sx.Zero()
        case "1":
            return sx.POne()
        case "T":
            return sx.NTop()
        case "dn":
            (b,) = _arity(head, args, 1)
            return sx.Down(_neg(pprop_from_sexp(b)))
        case "up":
            (b,) = _arity(head, args, 1)
            return sx.Up(_pos(pprop_from_sexp(b)))
        case "+":
            a, b = _arity(head, args, 2)
            return sx.POr(_pos(pprop_from_sexp(a)), _pos(pprop_from_sexp(b)))
        case "*":
            a, b = _arity(head, args, 2)
            return sx.PAnd(_pos(pprop_from_sexp(a)), _pos(pprop_from_sexp(b)))
        case "&":
            a, b = _arity(head, args, 2)
            return sx.NAnd(_neg(pprop_from_sexp(a)), _neg(pprop_from_sexp(b)))
        case "->":
            a, b = _arity(head, args, 2)
            return sx.NImp(_pos(pprop_from_sexp(a)), _neg(pprop_from_sexp(b)))
        case _:
            _arity(head, args, 0)
            if head.endswith("+"):
                return sx.PosAtom(head[:-1])
            if head.endswith("-"):
                return sx.NegAtom(head[:-1])
            raise ParseError(0, {"polarized atom"}, head)


def _pos(a: sx.PProp) -> sx.Pos:
    if not sx.is_pos(a):
        raise ParseError(0, {"positive proposition"}, sx.print_pprop(a))
    return a


def _neg(a: sx.PProp) -> sx.Neg:
    if not sx.is_neg(a):
        raise ParseError(0, {"negative proposition"}, sx.print_pprop(a))
    return a


def succ_to_sexp(su: sx.Succedent) -> SExp:
    match su:
        case sx.RFoc(a):
            return ["rfoc", pprop_to_sexp(a)]
        case sx.SPos(a):
            return ["spos", pprop_to_sexp(a)]
        case sx.INeg(a):
            return ["ineg", pprop_to_sexp(a)]
        case sx.SuspNeg(a):
            return ["suspneg", pprop_to_sexp(a)]
    raise TypeError(su)


def succ_from_sexp(s: SExp) -> sx.Succedent:
    head, args = _head(s, "succedent")
    (a,) = _arity(head, args, 1)
    match head:
        case "rfoc":
            return sx.RFoc(_pos(pprop_from_sexp(a)))
        case "spos":
            return sx.SPos(_pos(pprop_from_sexp(a)))
        case "ineg":
            return sx.INeg(_neg(pprop_from_sexp(a)))
        case "suspneg":
            return sx.SuspNeg(_neg(pprop_from_sexp(a)))
    raise ParseError(0, {"rfoc", "spos", "ineg", "suspneg"}, head)


def ctx_to_sexp(ctx: k.Ctx) -> SExp:
    out: list = ["ctx"]
    for name, hyp in ctx.items():
        tag = "hyp" if isinstance(hyp, k.NegHyp) else "susp"
        out.append([tag, name, pprop_to_sexp(hyp.prop)])
    return out


def ctx_from_sexp(s: SExp) -> k.Ctx:
    head, args = _head(s, "ctx")
    if head != "ctx":
        raise ParseError(0, {"ctx"}, head)
    ctx = k.Ctx.empty()
    for entry in args:
        tag, fields = _head(entry, "hyp")
        name, prop = _arity(tag, fields, 2)
        if tag == "hyp":
            ctx = ctx.add(name, k.NegHyp(_neg(pprop_from_sexp(prop))))
        elif tag == "susp":
            ctx = ctx.add(name, k.SuspHyp(_pos(pprop_from_sexp(prop))))
        else:
            raise ParseError(0, {"hyp", "susp"}, tag)
    return ctx


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

def term_to_sexp(e: k.Expr) -> SExp:
    match e:
        case k.Var(name):
            return ["var", name]
        case k.Thunk(body):
            return ["thunk", term_to_sexp(body)]
        case k.Inl(value, other):
            return ["inl", term_to_sexp(value), pprop_to_sexp(other)]
        case k.Inr(value, other):
            return ["inr", term_to_sexp(value), pprop_to_sexp(other)]
        case k.UnitP():
            return "unitp"
        case k.PairP(f, s):
            return ["pairp", term_to_sexp(f), term_to_sexp(s)]
        case k.FocR(value):
            return ["focr", term_to_sexp(value)]
        case k.FocL(var, spine):
            return ["focl", var, term_to_sexp(spine)]
        case k.SuspendPos(var, atom, body):
            return ["suspendpos", var, pprop_to_sexp(atom), term_to_sexp(body)]
        case k.LetThunk(var, ann, body):
            return ["letthunk", var, pprop_to_sexp(ann), term_to_sexp(body)]
        case k.Abort():
            return "abort"
        case k.Case(l, r):
            return ["case", term_to_sexp(l), term_to_sexp(r)]
        case k.LetUnit(body):
            return ["letunit", term_to_sexp(body)]
        case k.LetPair(body):
            return ["letpair", term_to_sexp(body)]
        case k.SuspendNeg(body):
            return ["suspendneg", term_to_sexp(body)]
        case k.Ret(body):
            return ["ret", term_to_sexp(body)]
        case k.Lam(body):
            return ["lam", term_to_sexp(body)]
        case k.UnitN():
            return "unitn"
        case k.PairN(f, s):
            return ["pairn", term_to_sexp(f), term_to_sexp(s)]
        case k.Nil():
            return "nil"
        case k.Match(body):
            return ["match", term_to_sexp(body)]
        case k.App(value, rest):
            return ["app", term_to_sexp(value), term_to_sexp(rest)]
        case k.Proj1(rest, other):
            return ["proj1", term_to_sexp(rest), pprop_to_sexp(other)]
        case k.Proj2(rest, other):
            return ["proj2", term_to_sexp(rest), pprop_to_sexp(other)]
    raise TypeError(e)


def term_from_sexp(s: SExp) -> k.Expr:
    head, args = _head(s, "term")
    match head:
        case "var":
            (name,) = _arity(head, args, 1)
            return k.Var(_name(name))
        case "thunk":
            (b,) = _arity(head, args, 1)
            return k.Thunk(_term(term_from_sexp(b)))
        case "inl":
            v, o = _arity(head, args, 2)
            return k.Inl(_value(term_from_sexp(v)), _pos(pprop_from_sexp(o)))
        case "inr":
            v, o = _arity(head, args, 2)
            return k.Inr(_value(term_from_sexp(v)), _pos(pprop_from_sexp(o)))
        case "unitp":
            _arity(head, args, 0)
            return k.UnitP()
        case "pairp":
            a, b = _arity(head, args, 2)
            return k.PairP(_value(term_from_sexp(a)), _value(term_from_sexp(b)))
        case "focr":
            (v,) = _arity(head, args, 1)
            return k.FocR(_value(term_from_sexp(v)))
        case "focl":
            var, sp = _arity(head, args, 2)
            return k.FocL(_name(var), _spine(term_from_sexp(sp)))
        case "suspendpos":
            var, atom, b = _arity(head, args, 3)
            return k.SuspendPos(
                _name(var), _pos(pprop_from_sexp(atom)), _term(term_from_sexp(b))
            )
        case "letthunk":
            var, ann, b = _arity(head, args, 3)
            return k.LetThunk(
                _name(var), _neg(pprop_from_sexp(ann)), _term(term_from_sexp(b))
            )
        case "abort":
            _arity(head, args, 0)
            return k.Abort()
        case "case":
            a, b = _arity(head, args, 2)
            return k.Case(_term(term_from_sexp(a)), _term(term_from_sexp(b)))
        case "letunit":
            (b,) = _arity(head, args, 1)
            return k.LetUnit(_term(term_from_sexp(b)))
        case "letpair":
            (b,) = _arity(head, args, 1)
            return k.LetPair(_term(term_from_sexp(b)))
        case "suspendneg":
            (b,) = _arity(head, args, 1)
            return k.SuspendNeg(_term(term_from_sexp(b)))
        case "ret":
            (b,) = _arity(head, args, 1)
            return k.Ret(_term(term_from_sexp(b)))
        case "lam":
            (b,) = _arity(head, args, 1)
            return k.Lam(_term(term_from_sexp(b)))
        case "unitn":
            _arity(head, args, 0)
            return k.UnitN()
        case "pairn":
            a, b = _arity(head, args, 2)
            return k.PairN(_term(term_from_sexp(a)), _term(term_from_sexp(b)))
        case "nil":
            _arity(head, args, 0)
            return k.Nil()
        case "match":
            (b,) = _arity(head, args, 1)
            return k.Match(_term(term_from_sexp(b)))
        case "app":
            v, sp = _arity(head, args, 2)
            return k.App(_value(term_from_sexp(v)), _spine(term_from_sexp(sp)))
        case "proj1":
            sp, o = _arity(head, args, 2)
            return k.Proj1(_spine(term_from_sexp(sp)), _neg(pprop_from_sexp(o)))
        case "proj2":
            sp, o = _arity(head, args, 2)
            return k.Proj2(_spine(term_from_sexp(sp)), _neg(pprop_from_sexp(o)))
    raise ParseError(0, {"term constructor"}, head)


def _name(s: SExp) -> str:
    if not isinstance(s, str):
        raise ParseError(0, {"variable name"}, write_sexp(s))
    return s


def _value(e: k.Expr) -> k.Value:
    if not isinstance(e, (k.Var, k.Thunk, k.Inl, k.Inr, k.UnitP, k.PairP)):
        raise ParseError(0, {"value"}, type(e).__name__)
    return e


def _term(e: k.Expr) -> k.Term:
    if isinstance(e, (k.Var, k.Thunk, k.Inl, k.Inr, k.UnitP, k.PairP,
                      k.Nil, k.Match, k.App, k.Proj1, k.Proj2)):
        raise ParseError(0, {"term"}, type(e).__name__)
    return e


def _spine(e: k.Expr) -> k.Spine:
    if not isinstance(e, (k.Nil, k.Match, k.App, k.Proj1, k.Proj2)):
        raise ParseError(0, {"spine"}, type(e).__name__)
    return e


# ---------------------------------------------------------------------------
# Unfocused derivations
# ---------------------------------------------------------------------------

def uderiv_to_sexp(d: u.UDeriv) -> SExp:
    match d:
        case u.Init():
            return "init"
        case u.BotL():
            return "botl"
        case u.TopR():
            return "topr"
        case u.OrR1(sub):
            return ["orr1", uderiv_to_sexp(sub)]
        case u.OrR2(sub):
            return ["orr2", uderiv_to_sexp(sub)]
        case u.OrL(pr, l, r):
            return ["orl", uprop_to_sexp(pr), uderiv_to_sexp(l), uderiv_to_sexp(r)]
        case u.AndR(l, r):
            return ["andr", uderiv_to_sexp(l), uderiv_to_sexp(r)]
        case u.AndL1(pr, sub):
            return ["andl1", uprop_to_sexp(pr), uderiv_to_sexp(sub)]
        case u.AndL2(pr, sub):
            return ["andl2", uprop_to_sexp(pr), uderiv_to_sexp(sub)]
        case u.ImpR(sub):
            return ["impr", uderiv_to_sexp(sub)]
        case u.ImpL(pr, arg, body):
            return ["impl", uprop_to_sexp(pr), uderiv_to_sexp(arg), uderiv_to_sexp(body)]
        case u.PsiCons(sub):
            return ["cons", uderiv_to_sexp(sub)]
        case u.PsiNil(sub):
            return ["nil", uderiv_to_sexp(sub)]
    raise TypeError(d)


def uderiv_from_sexp(s: SExp) -> u.UDeriv:
    head, args = _head(s, "derivation")
    match head:
        case "init":
            _arity(head, args, 0)
            return u.Init()
        case "botl":
            _arity(head, args, 0)
            return u.BotL()
        case "topr":
            _arity(head, args, 0)
            return u.TopR()
        case "orr1":
            (a,) = _arity(head, args, 1)
            return u.OrR1(uderiv_from_sexp(a))
        case "orr2":
            (a,) = _arity(head, args, 1)
            return u.OrR2(uderiv_from_sexp(a))
        case "orl":
            p, a, b = _arity(head, args, 3)
            return u.OrL(uprop_from_sexp(p), uderiv_from_sexp(a), uderiv_from_sexp(b))
        case "andr":
            a, b = _arity(head, args, 2)
            return u.AndR(uderiv_from_sexp(a), uderiv_from_sexp(b))
        case "andl1":
            p, a = _arity(head, args, 2)
            return u.AndL1(uprop_from_sexp(p), uderiv_from_sexp(a))
        case "andl2":
            p, a = _arity(head, args, 2)
            return u.AndL2(uprop_from_sexp(p), uderiv_from_sexp(a))
        case "impr":
            (a,) = _arity(head, args, 1)
            return u.ImpR(uderiv_from_sexp(a))
        case "impl":
            p, a, b = _arity(head, args, 3)
            return u.ImpL(uprop_from_sexp(p), uderiv_from_sexp(a), uderiv_from_sexp(b))
        case "cons":
            (a,) = _arity(head, args, 1)
            return u.PsiCons(uderiv_from_sexp(a))
        case "nil":
            (a,) = _arity(head, args, 1)
            return u.PsiNil(uderiv_from_sexp(a))
    raise ParseError(0, {"derivation rule"}, head)


def uderiv_to_text(d: u.UDeriv, indent: int = 0) -> str:
    """Indented rule-tree rendering."""
    pad = "  " * indent
    match d:
        case u.Init() | u.BotL() | u.TopR():
            return pad + u.RULE_NAMES[type(d)]
        case u.OrL(pr, l, r):
            return (f"{pad}orl ({sx.print_uprop(pr)})\n"
                    f"{uderiv_to_text(l, indent + 1)}\n{uderiv_to_text(r, indent + 1)}")
        case u.AndL1(pr, sub) | u.AndL2(pr, sub):
            name = u.RULE_NAMES[type(d)]
            return f"{pad}{name} ({sx.print_uprop(pr)})\n{uderiv_to_text(sub, indent + 1)}"
        case u.ImpL(pr, arg, body):
            return (f"{pad}impl ({sx.print_uprop(pr)})\n"
                    f"{uderiv_to_text(arg, indent + 1)}\n{uderiv_to_text(body, indent + 1)}")
        case u.AndR(l, r):
            return f"{pad}andr\n{uderiv_to_text(l, indent + 1)}\n{uderiv_to_text(r, indent + 1)}"
        case u.OrR1(sub) | u.OrR2(sub) | u.ImpR(sub) | u.PsiCons(sub) | u.PsiNil(sub):
            name = u.RULE_NAMES[type(d)]
            return f"{pad}{name}\n{uderiv_to_text(sub, indent + 1)}"
    raise TypeError(d)
