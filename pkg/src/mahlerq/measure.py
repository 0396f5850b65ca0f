"""Exact Mahler measures m(Q_n) and their numerical values.

For n = 2m the measure is

    m(Q_2m) = (2/12^m) * [ sum_{h=1}^{m} a_{m,h-1} 9^h C(h) zeta(2h+1)/pi^(2h)
                          + sum_{h=0}^{m-1} b_{m,h} 3^(2h+1) D(h) L(2h+2)/pi^(2h+1) ]

where C(h) = (2h)! (1 - 3^(-2h-1)) (1 - 2^(-2h-1)) and
D(h) = (2h+1)! (1 + 2^(-2h-2)).  For n = 2m+1 the prefactor is 1/(12^m sqrt3)
and c_m, d_m replace a_m, b_m, with L-terms for h = 0..m.  Expressions keep
pi symbolic.  Each stored coefficient multiplies one basis element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

import mpmath

from .coeffs import build_tables
from .field import PrecisionContext, SqrtThreeNumber
from .lvalues import BasisTerm, deriv_factor
from .series import ConsistencyError

__all__ = [
    "MahlerExpression",
    "FTerm",
    "FForm",
    "zeta_packet",
    "l_packet",
    "measure_expression",
    "expression_from_f_form",
    "f_form",
    "measure_numeric",
    "BASES",
]

BASES = ("critical", "derivative")

_ROOT3 = SqrtThreeNumber(0, 1)


def zeta_packet(h: int) -> Fraction:
    """(2h)! (1 - 3^(-2h-1)) (1 - 2^(-2h-1))."""
    return math.factorial(2 * h) * (1 - Fraction(1, 3 ** (2 * h + 1))) * (1 - Fraction(1, 2 ** (2 * h + 1)))


def l_packet(h: int) -> Fraction:
    """(2h+1)! (1 + 2^(-2h-2))."""
    return math.factorial(2 * h + 1) * (1 + Fraction(1, 2 ** (2 * h + 2)))


@dataclass(frozen=True)
class MahlerExpression:
    """sum of coefficient * basis term, terms sorted by (kind, h)."""

    n: int
    basis: str
    terms: Tuple[Tuple[BasisTerm, SqrtThreeNumber], ...]

    @classmethod
    def build(cls, n: int, basis: str, items: Iterable[Tuple[BasisTerm, SqrtThreeNumber]]):
        if basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        merged: Dict[BasisTerm, SqrtThreeNumber] = {}
        for term, c in items:
            if term.derivative != (basis == "derivative"):
                raise ValueError(f"term {term.label()} does not belong to the {basis} basis")
            merged[term] = merged.get(term, SqrtThreeNumber(0)) + c
        return cls(n, basis, tuple(sorted(merged.items(), key=lambda kv: kv[0].sort_key())))

    def coefficient(self, kind: str, h: int) -> SqrtThreeNumber:
        for term, c in self.terms:
            if term.kind == kind and term.h == h:
                return c
        return SqrtThreeNumber(0)

    def as_dict(self) -> Dict[Tuple[str, int], SqrtThreeNumber]:
        return {(t.kind, t.h): c for t, c in self.terms}

    def to_basis(self, basis: str) -> "MahlerExpression":
        """Convert between bases using the exact functional-equation factors."""
        if basis == self.basis:
            return self
        if basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        to_deriv = basis == "derivative"
        items = []
        for term, c in self.terms:
            factor = deriv_factor(term.h, term.kind)
            # critical = derivative / factor
            new_c = c / factor if to_deriv else c * factor
            items.append((BasisTerm(term.kind, term.h, to_deriv), new_c))
        return MahlerExpression.build(self.n, basis, items)

    def evaluate(self, ctx: PrecisionContext | None = None, method: str = "functional"):
        ctx = ctx or PrecisionContext.from_digits(30)
        with ctx.working():
            return mpmath.fsum(c.to_mpf(ctx) * t.evaluate(ctx, method) for t, c in self.terms)

    def to_json(self, numeric: str | None = None) -> dict:
        out = {
            "n": self.n,
            "basis": self.basis,
            "terms": [{"kind": t.kind, "h": t.h, "coeff": c.to_json()} for t, c in self.terms],
        }
        if numeric is not None:
            out["numeric"] = numeric
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "MahlerExpression":
        deriv = obj["basis"] == "derivative"
        items = [(BasisTerm(t["kind"], t["h"], deriv), SqrtThreeNumber.from_json(t["coeff"])) for t in obj["terms"]]
        return cls.build(obj["n"], obj["basis"], items)

    def __str__(self):
        parts = []
        for t, c in self.terms:
            parts.append(f"({c})*{t.label()}")
        return " + ".join(parts) if parts else "0"


def measure_expression(n: int, basis: str = "critical") -> MahlerExpression:
    """m(Q_n) in the requested basis, assembled from the coefficient tables."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be an integer >= 1")
    m = n // 2
    t = build_tables(m)
    items: List[Tuple[BasisTerm, SqrtThreeNumber]] = []
    if n % 2 == 0:
        pre = SqrtThreeNumber(Fraction(2, 12**m))
        for h in range(1, m + 1):
            items.append((BasisTerm("zeta", h), pre * t.a[(m, h - 1)] * (9**h * zeta_packet(h))))
        for h in range(0, m):
            items.append((BasisTerm("L", h), pre * t.b[(m, h)] * (3 ** (2 * h + 1) * l_packet(h))))
    else:
        pre = SqrtThreeNumber(Fraction(1, 12**m)) / _ROOT3
        for h in range(1, m + 1):
            items.append((BasisTerm("zeta", h), pre * t.c[(m, h - 1)] * (9**h * zeta_packet(h))))
        for h in range(0, m + 1):
            items.append((BasisTerm("L", h), pre * t.d[(m, h)] * (3 ** (2 * h + 1) * l_packet(h))))
    expr = MahlerExpression.build(n, "critical", items)
    return expr.to_basis(basis)


@dataclass(frozen=True)
class FTerm:
    """coeff * (pi/3)^pi3_power * I(kind, h).

    For the zeta kind, I is the integral of log+|y| (y+1)/(y^3-1) log^(2h-1)|y|
    over the real line, which equals 2 (2h)! (1-3^(-2h-1))(1-2^(-2h-1)) zeta(2h+1).
    For the L kind, I is the integral of log+|y| log^(2h)|y| / (y^2+y+1),
    which equals 2 (2h+1)! (1+2^(-2h-2)) L(chi_-3, 2h+2).
    """

    kind: str
    h: int
    coeff: SqrtThreeNumber
    pi3_power: int

    def integral_value_factor(self) -> Fraction:
        return 2 * (zeta_packet(self.h) if self.kind == "zeta" else l_packet(self.h))


@dataclass(frozen=True)
class FForm:
    """The k-fold integral F(k) after the final iteration, as single-integral terms."""

    k: int
    terms: Tuple[FTerm, ...]

    def reduce(self) -> MahlerExpression:
        """m(Q_k) = (sqrt3/(2 pi))^k F(k), written in the critical basis."""
        scale = (_ROOT3 / 2) ** self.k  # sqrt3^k / 2^k, the pi^-k goes into the basis
        items = []
        for term in self.terms:
            c = scale * term.coeff * (Fraction(1, 3**term.pi3_power) * term.integral_value_factor())
            items.append((BasisTerm(term.kind, term.h), c))
            # check that the pi bookkeeping lands on the basis element
            pi_power = term.pi3_power - self.k
            expected = -2 * term.h if term.kind == "zeta" else -(2 * term.h + 1)
            if pi_power != expected:
                raise ConsistencyError(f"pi power {pi_power} does not match basis term {term}")
        return MahlerExpression.build(self.k, "critical", items)

    def evaluate_integrals(self, integral) -> float:
        """Numeric F(k) given a callable integral(kind, h) -> value."""
        total = 0.0
        for term in self.terms:
            total += float(term.coeff) * (math.pi / 3) ** term.pi3_power * integral(term.kind, term.h)
        return total


def f_form(k: int) -> FForm:
    """F(k) as a combination of the two canonical single integrals."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be an integer >= 1")
    terms = []
    if k % 2 == 0:
        n = k // 2 - 1  # k = 2n + 2
        t = build_tables(n + 1)
        for h in range(1, n + 2):
            terms.append(FTerm("zeta", h, t.a[(n + 1, h - 1)], 2 * n + 2 - 2 * h))
        for h in range(0, n + 1):
            terms.append(FTerm("L", h, t.b[(n + 1, h)], 2 * n + 1 - 2 * h))
    else:
        n = (k - 1) // 2
        t = build_tables(n)
        for h in range(1, n + 1):
            terms.append(FTerm("zeta", h, t.c[(n, h - 1)], 2 * n - 2 * h + 1))
        for h in range(0, n + 1):
            terms.append(FTerm("L", h, t.d[(n, h)], 2 * n - 2 * h))
    return FForm(k, tuple(terms))


def expression_from_f_form(n: int) -> MahlerExpression:
    return f_form(n).reduce()


def measure_numeric(n: int, ctx: PrecisionContext | None = None):
    """Numeric m(Q_n), checked across both bases.

    The critical basis is evaluated from zeta and L values.  The derivative
    basis is evaluated from mpmath's zeta derivatives at negative integers,
    which do not pass through the functional-equation factors.  The two must
    agree to 10^-(digits-5).
    """
    ctx = ctx or PrecisionContext.from_digits(30)
    crit = measure_expression(n, "critical")
    deriv = crit.to_basis("derivative")
    with ctx.working():
        v1 = crit.evaluate(ctx)
        v2 = deriv.evaluate(ctx, method="direct")
        tol = mpmath.mpf(10) ** (-(ctx.target_digits - 5)) * max(1, abs(v1))
        if abs(v1 - v2) > tol:
            raise ConsistencyError(f"m(Q_{n}): bases disagree ({v1} vs {v2})")
        return v1
