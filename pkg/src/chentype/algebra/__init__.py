"""Exact arithmetic kernel: scalars, polynomials, rational functions, derivations."""

from .derivation import DerivationEnv, differentiate
from .expr import Expr, const, degree_in, normalize, substitute, sym, vanishing
from .linalg import linear_dependence, nullspace, solve_monic
from .poly import MultiPoly
from .scalars import scalar
from .sqrtext import ExtElement, SqrtExtension, ext_differentiate, ext_mul
from .symbols import Indeterminate, Kind, chart, diff, func, param, root
from .textio import SymbolTable, parse, to_latex, to_text
from .univariate import rational_roots

__all__ = [
    "DerivationEnv", "Expr", "ExtElement", "Indeterminate", "Kind", "MultiPoly",
    "SqrtExtension", "SymbolTable", "chart", "const", "degree_in", "diff",
    "differentiate", "ext_differentiate", "ext_mul", "func", "linear_dependence",
    "normalize", "nullspace", "param", "parse", "rational_roots", "root", "scalar", "solve_monic",
    "substitute", "sym", "to_latex", "to_text", "vanishing",
]
