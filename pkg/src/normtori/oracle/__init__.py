"""Brute-force finite-field cross-checks."""

from .counting import BudgetExceeded, count_split
from .fields import SUPPORTED_Q, FqField, UnsupportedField, make_field
from .quadratic import QuadTriple, equivalence_report, solutions_quad

__all__ = [
    "BudgetExceeded",
    "count_split",
    "SUPPORTED_Q",
    "FqField",
    "UnsupportedField",
    "make_field",
    "QuadTriple",
    "equivalence_report",
    "solutions_quad",
]
