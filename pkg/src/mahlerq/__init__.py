"""Exact Mahler measures for y + prod_j (z_j + w)/(z_j + 1), w a primitive cube root of unity.

The measure of the n-variable member is a rational combination of
zeta(2h+1)/pi^(2h) and L(chi_-3, 2h+2)/pi^(2h+1).  This package computes
those combinations exactly over Q(sqrt 3) and checks every intermediate
formula against independent quadrature.
"""

from .closedforms import closed_form, f1, f2, f_sum, g1, g2, g_sum
from .coeffs import build_tables, rationality_audit
from .field import ParityPolynomial, PrecisionContext, Rational, SqrtThreeNumber
from .measure import MahlerExpression, measure_expression, measure_numeric
from .recpoly import get_poly

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "SqrtThreeNumber",
    "ParityPolynomial",
    "PrecisionContext",
    "get_poly",
    "closed_form",
    "f1",
    "f2",
    "g1",
    "g2",
    "f_sum",
    "g_sum",
    "build_tables",
    "rationality_audit",
    "MahlerExpression",
    "measure_expression",
    "measure_numeric",
]
