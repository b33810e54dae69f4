"""The logical intermediate language: typed lambda terms with connectives."""

from .reduce import LEFTMOST_OUTERMOST, RIGHTMOST_INNERMOST, ReductionTrace, beta_normalize, normalize
from .syntax import parse_term, to_text
from .terms import (
    App,
    Conn,
    Const,
    Eq,
    Lam,
    Not,
    Op,
    Quant,
    Quantifier,
    Term,
    Var,
    alpha_eq,
    app,
    free_vars,
    infer_type,
    modus_ponens,
    substitute,
)

__all__ = [
    "App", "Conn", "Const", "Eq", "Lam", "Not", "Op", "Quant", "Quantifier", "Term", "Var",
    "LEFTMOST_OUTERMOST", "RIGHTMOST_INNERMOST", "ReductionTrace",
    "alpha_eq", "app", "beta_normalize", "free_vars", "infer_type", "modus_ponens",
    "normalize", "parse_term", "substitute", "to_text",
]
