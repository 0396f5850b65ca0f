"""Truncated Laurent series with polynomial coefficients, and the series families.

The alternate description of the integrals uses generating functions such as

    csc(T/2 - theta/2) * csc(T/2) * sinh(xT) = sum_{m>=-1} A_m(x) T^m / m!

This module builds those products exactly.  The coefficient of ``T^m`` is a
:class:`ParityPolynomial` in the symbol x over Q(sqrt 3).  Only
sinh/cosh/exp(xT) carry x.  The trigonometric factors have constant
coefficients.  Phases are rational multiples of pi whose sine and cosine lie in
Q(sqrt 3), which means multiples of pi/6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from .field import ONE, ZERO, ParityPolynomial, SqrtThreeNumber
from .recpoly import binomial, get_poly

__all__ = [
    "LaurentSeries",
    "TruncationOrderError",
    "UnsupportedPhaseError",
    "ConsistencyError",
    "bernoulli",
    "mu",
    "mu_partition",
    "mu_reciprocal",
    "trig_series",
    "FAMILY_DEFINITIONS",
    "SERIES_FAMILIES",
    "extract_family",
    "am_expl",
    "bm_expl",
    "relation_check",
    "RelationReport",
    "RelationEntry",
    "THETA",
    "DELTA",
]

THETA = Fraction(2, 3)  # theta = 2*pi/3, stored as a multiple of pi
DELTA = Fraction(1, 3)  # delta = pi/3


class TruncationOrderError(ValueError):
    """A coefficient was requested beyond the known truncation order."""


class UnsupportedPhaseError(ValueError):
    """The phase's sine or cosine does not lie in Q(sqrt 3)."""


class ConsistencyError(ArithmeticError):
    """Two independent exact computations disagreed."""


_ZERO_POLY = ParityPolynomial.zero()


def _const(c) -> ParityPolynomial:
    return ParityPolynomial.constant(c)


class LaurentSeries:
    """``sum_{m=valuation}^{order} coeffs[m - valuation] * T**m`` plus O(T**(order+1)).

    Coefficients are ParityPolynomials in x.  The valuation is at least -1,
    which covers every generating function used here.
    """

    __slots__ = ("valuation", "order", "coeffs")

    def __init__(self, valuation: int, order: int, coeffs: Sequence[ParityPolynomial]):
        if valuation < -1:
            raise ValueError("valuation below -1 is outside the supported range")
        if order < valuation - 1:
            raise ValueError("order must be at least valuation - 1")
        cs = list(coeffs)[: order - valuation + 1]
        cs += [_ZERO_POLY] * (order - valuation + 1 - len(cs))
        self.valuation = valuation
        self.order = order
        self.coeffs: Tuple[ParityPolynomial, ...] = tuple(
            c if isinstance(c, ParityPolynomial) else _const(c) for c in cs
        )

    @classmethod
    def from_scalars(cls, valuation: int, order: int, scalars: Sequence) -> "LaurentSeries":
        return cls(valuation, order, [_const(s) for s in scalars])

    def coeff(self, m: int) -> ParityPolynomial:
        if m > self.order:
            raise TruncationOrderError(
                f"coefficient of T^{m} requested but series is known only to T^{self.order}"
            )
        if m < self.valuation:
            return _ZERO_POLY
        return self.coeffs[m - self.valuation]

    def normalized(self) -> "LaurentSeries":
        """Drop leading zero coefficients, raising the valuation."""
        v, cs = self.valuation, list(self.coeffs)
        while cs and cs[0].is_zero():
            cs.pop(0)
            v += 1
        if not cs:
            return LaurentSeries(self.order + 1, self.order, [])
        return LaurentSeries(v, self.order, cs)

    def truncate(self, order: int) -> "LaurentSeries":
        if order > self.order:
            raise TruncationOrderError("cannot extend a truncated series")
        return LaurentSeries(self.valuation, order, self.coeffs)

    # arithmetic -------------------------------------------------------
    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        v = min(self.valuation, other.valuation)
        M = min(self.order, other.order)
        return LaurentSeries(v, M, [self.coeff(m) + other.coeff(m) for m in range(v, M + 1)])

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.valuation, self.order, [-c for c in self.coeffs])

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, c) -> "LaurentSeries":
        return LaurentSeries(self.valuation, self.order, [p.scale(c) for p in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        v = self.valuation + other.valuation
        M = min(self.order + other.valuation, other.order + self.valuation)
        out = []
        for m in range(v, M + 1):
            acc = _ZERO_POLY
            for i in range(self.valuation, m - other.valuation + 1):
                a = self.coeffs[i - self.valuation]
                b = other.coeffs[m - i - other.valuation]
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return LaurentSeries(v, M, out)

    __rmul__ = __mul__

    def reciprocal(self) -> "LaurentSeries":
        s = self.normalized()
        if s.valuation > s.order:
            raise ZeroDivisionError("reciprocal of a series with no known nonzero term")
        lead = s.coeffs[0]
        if not lead.is_constant() or lead.is_zero():
            raise ValueError("reciprocal needs a nonzero constant leading coefficient")
        inv0 = lead.slot(0).inverse()
        n_terms = s.order - s.valuation + 1
        a = [c for c in s.coeffs]
        b: List[ParityPolynomial] = [_const(inv0)]
        for k in range(1, n_terms):
            acc = _ZERO_POLY
            for i in range(1, k + 1):
                if not a[i].is_zero() and not b[k - i].is_zero():
                    acc = acc + a[i] * b[k - i]
            b.append((-acc).scale(inv0))
        return LaurentSeries(-s.valuation, s.order - 2 * s.valuation, b)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        M = min(self.order, other.order)
        lo = min(self.valuation, other.valuation)
        return all(self.coeff(m) == other.coeff(m) for m in range(lo, M + 1))

    def __repr__(self):
        terms = ", ".join(f"T^{m}: {self.coeff(m)}" for m in range(self.valuation, self.order + 1))
        return f"LaurentSeries(v={self.valuation}, M={self.order}, {{{terms}}})"


# ---------------------------------------------------------------------------
# Bernoulli numbers and the exact trigonometric constants

_bernoulli_cache: List[Fraction] = [Fraction(1)]


def bernoulli(j: int) -> Fraction:
    """B_j with B_1 = -1/2, from sum_{i<n} C(n,i) B_i = 0 (n >= 2)."""
    if j < 0:
        raise ValueError("Bernoulli index must be non-negative")
    while len(_bernoulli_cache) <= j:
        n = len(_bernoulli_cache) + 1  # solve for B_{n-1}
        s = sum(binomial(n, i) * _bernoulli_cache[i] for i in range(n - 1))
        _bernoulli_cache.append(-s / n)
    return _bernoulli_cache[j]


_HALF_ROOT = SqrtThreeNumber(0, Fraction(1, 2))
_HALF = SqrtThreeNumber(Fraction(1, 2), 0)
# sin and cos of r*pi/6 for r = 0..11
_SIN_TABLE = [ZERO, _HALF, _HALF_ROOT, ONE, _HALF_ROOT, _HALF, ZERO, -_HALF, -_HALF_ROOT, -ONE, -_HALF_ROOT, -_HALF]
_COS_TABLE = [_SIN_TABLE[(r + 3) % 12] for r in range(12)]


def _phase_index(phase: Fraction) -> int:
    phase = Fraction(phase)
    six = phase * 6
    if six.denominator != 1:
        raise UnsupportedPhaseError(
            f"phase {phase}*pi is not a multiple of pi/6; its sine is not in Q(sqrt 3)"
        )
    return int(six) % 12


def exact_sin(phase: Fraction) -> SqrtThreeNumber:
    """sin(phase*pi) exactly."""
    return _SIN_TABLE[_phase_index(phase)]


def exact_cos(phase: Fraction) -> SqrtThreeNumber:
    return _COS_TABLE[_phase_index(phase)]


def _sin_cos_scalars(a: Fraction, order: int, kind: str) -> List[Fraction]:
    """Taylor coefficients of sin(aT) or cos(aT) up to T^order."""
    out = []
    for m in range(order + 1):
        if (kind == "sin") == (m % 2 == 1):
            sign = -1 if (m // 2) % 2 else 1
            out.append(Fraction(sign) * a**m / math.factorial(m))
        else:
            out.append(Fraction(0))
    return out


def _csc_zero_phase(a: Fraction, order: int) -> LaurentSeries:
    """csc(aT) = sum_k (-1)^(k+1) 2 (2^(2k-1) - 1) B_2k/(2k)! (aT)^(2k-1)."""
    scalars = []
    for m in range(-1, order + 1):
        if m % 2 == 0:
            scalars.append(Fraction(0))
            continue
        k = (m + 1) // 2
        c = Fraction((-1) ** (k + 1) * 2) * (Fraction(2) ** (2 * k - 1) - 1) * bernoulli(2 * k)
        scalars.append(c / math.factorial(2 * k) * a**m)
    return LaurentSeries.from_scalars(-1, order, scalars)


def trig_series(kind: str, scale, shift: Fraction = Fraction(0), order: int = 10) -> LaurentSeries:
    """Expansion in T of ``kind(scale*T + shift*pi)``.

    ``kind`` is one of sin, cos, csc, cot, sinh, cosh, exp.  For the
    trigonometric kinds, ``scale`` is a rational and ``shift`` a rational
    multiple of pi.  For sinh/cosh/exp, ``scale`` may be the string ``"x"``,
    which produces polynomial coefficients x^m/m!.  A nonzero shift is not
    supported there.
    """
    if order < -1:
        raise ValueError("order must be at least -1")
    shift = Fraction(shift)
    if kind in ("sinh", "cosh", "exp"):
        if shift != 0:
            raise UnsupportedPhaseError("hyperbolic/exponential generators take no phase")
        coeffs = []
        for m in range(0, order + 1):
            wanted = kind == "exp" or (kind == "sinh") == (m % 2 == 1)
            if not wanted:
                coeffs.append(_ZERO_POLY)
            elif scale == "x":
                coeffs.append(ParityPolynomial.monomial(Fraction(1, math.factorial(m)), m))
            else:
                coeffs.append(_const(Fraction(scale) ** m / math.factorial(m)))
        return LaurentSeries(0, order, coeffs)

    if scale == "x":
        raise ValueError("symbolic scale is only supported for sinh, cosh and exp")
    a = Fraction(scale)
    s_phi, c_phi = exact_sin(shift), exact_cos(shift)
    if kind in ("sin", "cos"):
        sin_a = _sin_cos_scalars(a, max(order, 0), "sin")
        cos_a = _sin_cos_scalars(a, max(order, 0), "cos")
        if kind == "sin":
            # sin(aT + phi) = sin(phi) cos(aT) + cos(phi) sin(aT)
            vals = [s_phi * c + c_phi * s for c, s in zip(cos_a, sin_a)]
        else:
            # cos(aT + phi) = cos(phi) cos(aT) - sin(phi) sin(aT)
            vals = [c_phi * c - s_phi * s for c, s in zip(cos_a, sin_a)]
        return LaurentSeries.from_scalars(0, order, vals)
    if kind == "csc":
        if a == 0:
            raise ValueError("csc of a constant is not a series in T")
        if s_phi.is_zero():
            # shift is a multiple of pi: csc(aT + j*pi) = (-1)^j csc(aT)
            return _csc_zero_phase(a, order).scale(c_phi)
        return trig_series("sin", a, shift, order).reciprocal()
    if kind == "cot":
        csc = trig_series("csc", a, shift, order)
        cos = trig_series("cos", a, shift, order + 1)
        return (cos * csc).truncate(order)
    raise ValueError(f"unknown series kind {kind!r}")


# ---------------------------------------------------------------------------
# mu_n: derivatives of csc(T/2 - theta/2) at T = 0


def _partitions(n: int) -> Iterator[Dict[int, int]]:
    """Yield partitions of n as multiplicity maps {part: count}."""

    def rec(remaining: int, max_part: int):
        if remaining == 0:
            yield {}
            return
        for part in range(min(remaining, max_part), 0, -1):
            for count in range(remaining // part, 0, -1):
                for rest in rec(remaining - part * count, part - 1):
                    d = dict(rest)
                    d[part] = count
                    yield d

    yield from rec(n, n)


@lru_cache(maxsize=None)
def mu_partition(n: int) -> SqrtThreeNumber:
    """mu_n from the Faa di Bruno partition sum."""
    if n < 0:
        raise ValueError("n must be non-negative")
    total = ZERO
    for ks in _partitions(n):
        k = sum(ks.values())
        eps = sum(c for j, c in ks.items() if j % 2 == 1)
        xi = sum(c for j, c in ks.items() if j % 4 in (0, 3))
        weight = Fraction(math.factorial(n) * math.factorial(k))
        for j, c in ks.items():
            weight /= math.factorial(c) * math.factorial(j) ** c
        term = SqrtThreeNumber((-1) ** xi * weight) / (SqrtThreeNumber(0, 1) ** eps)
        total = total + term
    prefactor = SqrtThreeNumber(-1) / (SqrtThreeNumber(Fraction(2) ** (n - 1)) * SqrtThreeNumber(0, 1))
    return prefactor * total


@lru_cache(maxsize=None)
def _shifted_csc(order: int) -> LaurentSeries:
    return trig_series("csc", Fraction(1, 2), -THETA / 2, order)


def mu_reciprocal(n: int) -> SqrtThreeNumber:
    """mu_n as n! times the T^n coefficient of 1/sin(T/2 - theta/2)."""
    return _shifted_csc(max(n, 1)).coeff(n).slot(0) * math.factorial(n)


def mu(n: int) -> SqrtThreeNumber:
    """mu_n by both methods, which must agree exactly."""
    a, b = mu_partition(n), mu_reciprocal(n)
    if a != b:
        raise ConsistencyError(f"mu_{n}: partition sum {a} differs from series value {b}")
    return a


# ---------------------------------------------------------------------------
# Series-defined families

# Each definition lists factors (kind, scale, shift-as-multiple-of-pi).
FAMILY_DEFINITIONS: Dict[str, Tuple[Tuple[str, object, Fraction], ...]] = {
    "A": (("csc", Fraction(1, 2), -THETA / 2), ("csc", Fraction(1, 2), Fraction(0)), ("sinh", "x", Fraction(0))),
    "B": (("csc", Fraction(1, 2), -THETA / 2), ("csc", Fraction(1, 2), Fraction(0)), ("cosh", "x", Fraction(0))),
    "C": (("sin", Fraction(2), -THETA), ("csc", Fraction(3), Fraction(0)), ("sinh", "x", Fraction(0))),
    "D": (("sin", Fraction(2), -THETA), ("csc", Fraction(3), Fraction(0)), ("cosh", "x", Fraction(0))),
    "E": (("csc", Fraction(3, 2), Fraction(0)), ("cos", Fraction(1, 2), THETA), ("sinh", "x", Fraction(0))),
    "F": (("csc", Fraction(3, 2), Fraction(0)), ("cos", Fraction(1, 2), THETA), ("cosh", "x", Fraction(0))),
    "G": (("cot", Fraction(3, 2), Fraction(0)), ("exp", "x", Fraction(0))),
    "K": (("csc", Fraction(3, 2), Fraction(0)), ("sin", Fraction(1, 2), THETA / 2), ("sinh", "x", Fraction(0))),
    "L": (("csc", Fraction(3, 2), Fraction(0)), ("sin", Fraction(1, 2), THETA / 2), ("cosh", "x", Fraction(0))),
    "U": (("csc", Fraction(3), Fraction(0)), ("cos", Fraction(2), -2 * DELTA), ("sinh", "x", Fraction(0))),
    "V": (("csc", Fraction(3), Fraction(0)), ("cos", Fraction(2), -2 * DELTA), ("cosh", "x", Fraction(0))),
    "W": (("csc", Fraction(3), Fraction(0)), ("exp", "x", Fraction(0))),
    "N": (("csc", Fraction(3), Fraction(0)), ("sin", Fraction(2), -2 * DELTA), ("sinh", "x", Fraction(0))),
    "O": (("csc", Fraction(3), Fraction(0)), ("sin", Fraction(2), -2 * DELTA), ("cosh", "x", Fraction(0))),
}
SERIES_FAMILIES = tuple(FAMILY_DEFINITIONS)


def _factor_valuation(kind: str, shift: Fraction) -> int:
    if kind in ("csc", "cot") and exact_sin(shift).is_zero():
        return -1
    return 0


@lru_cache(maxsize=None)
def _product_series(name: str, order: int) -> LaurentSeries:
    factors = FAMILY_DEFINITIONS[name]
    vals = [_factor_valuation(k, sh) for k, _, sh in factors]
    total_v = sum(vals)
    result = None
    for (kind, scale, shift), v in zip(factors, vals):
        # each factor must be known far enough for T^order of the product
        factor_order = order - (total_v - v)
        s = trig_series(kind, scale, shift, factor_order)
        result = s if result is None else result * s
    return result


def extract_family(name: str, m: int, order: int | None = None) -> ParityPolynomial:
    """X_m(x) = m! * [T^m] of the defining product, for X in A..O.

    ``order`` is the truncation order of each generated factor; the default is
    2m + 4.  Too small an order raises TruncationOrderError.
    """
    name = name.upper()
    if name not in FAMILY_DEFINITIONS:
        raise ValueError(f"unknown series family {name!r}; expected one of {SERIES_FAMILIES}")
    if m < 0:
        raise ValueError("m must be non-negative")
    if order is None:
        order = 2 * m + 4
    factors = FAMILY_DEFINITIONS[name]
    total_v = sum(_factor_valuation(k, sh) for k, _, sh in factors)
    # the product of factors truncated at `order` is exact up to T^(order + total_v)
    if m > order + total_v:
        raise TruncationOrderError(f"{name}_{m} needs truncation order at least {m - total_v}")
    coeff = _product_series(name, order).coeff(m)
    result = coeff.scale(math.factorial(m))
    if name in ("A", "B"):
        other = (am_expl if name == "A" else bm_expl)(m)
        if other != result:
            raise ConsistencyError(f"{name}_{m}: convolution and series product differ")
    return result


def _csc_half_coeff(k: int) -> Fraction:
    """Coefficient of T^(2k-1) in csc(T/2)."""
    return Fraction((-1) ** (k - 1) * 2) * (1 - Fraction(1, 2) ** (2 * k - 1)) * bernoulli(2 * k) / math.factorial(2 * k)


def am_expl(m: int) -> ParityPolynomial:
    """A_m by the explicit three-way convolution."""
    dense = [ZERO] * (m + 2)
    for j in range(0, m // 2 + 1):
        inner = ZERO
        for k in range(0, (m + 1) // 2 + 1):
            i = m - 2 * j - 2 * k
            if i < 0:
                continue
            inner = inner + mu_partition(i) * (_csc_half_coeff(k) / math.factorial(i))
        dense[2 * j + 1] = inner * Fraction(math.factorial(m), math.factorial(2 * j + 1))
    return ParityPolynomial.from_dense(dense)


def bm_expl(m: int) -> ParityPolynomial:
    """B_m by the explicit three-way convolution."""
    dense = [ZERO] * (m + 3)
    for j in range(0, (m + 1) // 2 + 1):
        inner = ZERO
        for k in range(0, (m + 1) // 2 + 1):
            i = m - 2 * j - 2 * k + 1
            if i < 0:
                continue
            inner = inner + mu_partition(i) * (_csc_half_coeff(k) / math.factorial(i))
        dense[2 * j] = inner * Fraction(math.factorial(m), math.factorial(2 * j))
    return ParityPolynomial.from_dense(dense)


# ---------------------------------------------------------------------------
# Relations between the recursive and the series families


@dataclass(frozen=True)
class RelationEntry:
    relation: str
    index: int
    residual: ParityPolynomial
    allowed: str  # "zero" or "constant"

    @property
    def holds(self) -> bool:
        if self.allowed == "zero":
            return self.residual.is_zero()
        return self.residual.is_constant()


@dataclass
class RelationReport:
    n: int
    entries: List[RelationEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.holds for e in self.entries)

    def failures(self) -> List[RelationEntry]:
        return [e for e in self.entries if not e.holds]


_R3 = SqrtThreeNumber(0, 1)

# (recursive family, index parity, series family, factor c, allowed residual):
# residual = F_k - c * X_k.
_RELATIONS = (
    ("R", 0, "A", -_R3 / 4, "constant"),
    ("R", 1, "B", -_R3 / 4, "constant"),
    ("S", 0, "B", SqrtThreeNumber(Fraction(3, 4)), "zero"),
    ("S", 1, "A", SqrtThreeNumber(Fraction(3, 4)), "zero"),
)

# Relations found by comparing the recursive and series families directly.
# The odd-index Q relation carries a minus sign, so Q_2n+1 = -6 C_2n+1.
_EXTRA_RELATIONS = (
    ("P", 0, "C", -2 * _R3, "constant"),
    ("P", 1, "D", -2 * _R3, "constant"),
    ("Q", 0, "D", SqrtThreeNumber(-6), "zero"),
    ("Q", 1, "C", SqrtThreeNumber(-6), "zero"),
    ("Y", 0, "G", SqrtThreeNumber(-3), "constant"),
    ("Y", 1, "G", SqrtThreeNumber(-3), "constant"),
    ("Z", 0, "W", SqrtThreeNumber(-6), "constant"),
    ("Z", 1, "W", SqrtThreeNumber(-6), "constant"),
)


def relation_check(n: int, include_extra: bool = True) -> RelationReport:
    """Check the R/S relations at indices 2n and 2n+1.

    With ``include_extra`` the P/Q-to-C/D, Y-to-G and Z-to-W relations are
    checked as well.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    report = RelationReport(n)
    rels = _RELATIONS + (_EXTRA_RELATIONS if include_extra else ())
    for fam, par, sfam, c, allowed in rels:
        k = 2 * n + par
        residual = get_poly(fam, k) - extract_family(sfam, k).scale(c)
        report.entries.append(RelationEntry(f"{fam}_{k} - ({c})*{sfam}_{k}", k, residual, allowed))
    return report
