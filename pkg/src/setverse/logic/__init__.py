from .evaluate import (
    EvalResult,
    FiniteDomain,
    PairRelation,
    RankDomain,
    Structure,
    TRUE_MEMBERSHIP,
    TrueMembership,
    evaluate,
    outer_block,
    strip_block,
)
from .formula import (
    And,
    Const,
    Equality,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Lit,
    Membership,
    Not,
    Or,
    PairEq,
    Subset,
    Term,
    Var,
    conj,
    disj,
    free_vars,
    is_core,
    quantifier_count,
    quantifier_rank,
    to_text,
)
from .parser import parse_formula
from .transform import instantiate_schema, relativize, unfold_defined_terms

__all__ = [name for name in dir() if not name.startswith("_")]
