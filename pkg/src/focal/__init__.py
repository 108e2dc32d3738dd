"""focal: a checked kernel for polarized intuitionistic propositional logic.

Focused proof terms are checked by a deterministic kernel; cut admissibility
runs as hereditary substitution, identity as eta-expansion; focalization and
de-focalization translate between focused terms and unfocused derivations;
and a terminating focused search decides provability, cross-checked by a
Kripke countermodel oracle.
"""

from .admissible import RuleId, adm, shift_removal_neg, shift_removal_pos
from .cut import cut_neg, cut_pos, lsubst, metric_checks, rsubst
from .errors import (
    CheckError,
    CheckFailure,
    ErasureMismatch,
    FocalError,
    NotStable,
    NotSuspensionNormal,
    OmegaNonEmpty,
    ParseError,
    PremiseMismatch,
    RuleMismatch,
    TypeMismatch,
    UnboundVariable,
    WrongSort,
)
from .identity import expand_neg, expand_pos, id_neg, id_pos
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
    PairN,
    PairP,
    Proj1,
    Proj2,
    Ret,
    SuspendNeg,
    SuspendPos,
    SuspHyp,
    Thunk,
    UnitN,
    UnitP,
    Var,
    alpha_eq,
    check_spine,
    check_term,
    check_value,
    checks_spine,
    checks_term,
    checks_value,
    free_vars,
    is_suspension_normal,
    print_term,
    subst_neg,
    subst_pos,
    term_size,
)
from .prover import (
    KripkeModel,
    SearchStats,
    count_derivations,
    kripke_refute,
    prove,
)
from .syntax import (
    And,
    Atom,
    Bot,
    Down,
    Imp,
    INeg,
    NAnd,
    NegAtom,
    NImp,
    NTop,
    Or,
    PAnd,
    POne,
    POr,
    PosAtom,
    RFoc,
    SPos,
    Strategy,
    SuspNeg,
    Top,
    Up,
    Zero,
    erase_neg,
    erase_pos,
    erase_succ,
    is_stable,
    parse_neg,
    parse_pos,
    parse_pprop,
    parse_uprop,
    polarize,
    polarize_pos,
    print_pprop,
    print_succ,
    print_uprop,
)
from .translate import (
    defocalize_spine,
    defocalize_term,
    defocalize_value,
    erase_ctx,
    focalize,
    unfocused_cut,
    unfocused_identity,
)

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "0.1.0"
