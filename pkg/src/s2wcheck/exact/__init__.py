"""Exact arithmetic: rationals, polynomials, rational functions, series, row reduction."""

from fractions import Fraction as Rat

from .gpoly import LAMBDA_QUINTIC, GPoly, gpoly, gpoly_eval
from .linalg import RREF, det, left_nullspace, nullspace, rank, rref
from .modp import ModP
from .poly import Poly
from .ratfn import RatFn, local_expand, poly_wronskian, valuation_at, wronskian
from .series import INFINITY, LocalExpansion

__all__ = [
    "Rat",
    "GPoly",
    "gpoly",
    "gpoly_eval",
    "LAMBDA_QUINTIC",
    "RREF",
    "rref",
    "rank",
    "det",
    "nullspace",
    "left_nullspace",
    "ModP",
    "Poly",
    "RatFn",
    "local_expand",
    "valuation_at",
    "wronskian",
    "poly_wronskian",
    "INFINITY",
    "LocalExpansion",
]
