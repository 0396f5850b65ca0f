"""Closed forms for the log-power integrals f1, f2, g1, g2 and their sums.

    f1(k) = int_0^oo t log^k t / ((t^2+at+a^2)(t^2+bt+b^2)) dt
    f2(k) = int_0^oo t log^k t / ((t^2-at+a^2)(t^2-bt+b^2)) dt
    g1(k) = PV int_0^oo t(t+a) log^k t / ((t^3-a^3)(t^2+bt+b^2)) dt
    g2(k) = int_0^oo t(t-a) log^k t / ((t^3+a^3)(t^2-bt+b^2)) dt

Each value is a polynomial in pi, log|a| and log|b| with coefficients in
Q(sqrt 3).  :class:`LogPiForm` holds that polynomial exactly.  Floating
inputs are first converted exactly to rationals, so every evaluation goes
through the same symbolic path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Tuple

import mpmath

from .field import PrecisionContext, SqrtThreeNumber, as_fraction
from .recpoly import get_poly
from .series import DELTA, THETA, extract_family

__all__ = [
    "DomainError",
    "DegenerateParametersError",
    "IntegralParams",
    "LogPiForm",
    "INTEGRALS",
    "closed_form",
    "alternate_form",
    "evaluate",
    "f1",
    "f2",
    "g1",
    "g2",
    "f_sum",
    "g_sum",
]

INTEGRALS = ("f1", "f2", "g1", "g2", "fsum", "gsum")


class DomainError(ValueError):
    """Parameters outside the formula's domain."""


class DegenerateParametersError(DomainError):
    """|a| = |b|, where the formulas divide by zero."""


Key = Tuple[int, int, int]  # (power of pi, power of log|a|, power of log|b|)


@dataclass(frozen=True)
class LogPiForm:
    """sum c * pi^i * log|a|^j * log|b|^l with c in Q(sqrt 3)."""

    a_abs: Fraction
    b_abs: Fraction
    terms: Tuple[Tuple[Key, SqrtThreeNumber], ...]

    @classmethod
    def from_dict(cls, a_abs, b_abs, d: Dict[Key, SqrtThreeNumber]) -> "LogPiForm":
        items = tuple(sorted((k, v) for k, v in d.items() if not v.is_zero()))
        return cls(Fraction(a_abs), Fraction(b_abs), items)

    def as_dict(self) -> Dict[Key, SqrtThreeNumber]:
        return dict(self.terms)

    def __add__(self, other: "LogPiForm") -> "LogPiForm":
        if (self.a_abs, self.b_abs) != (other.a_abs, other.b_abs):
            raise ValueError("cannot add forms built on different parameters")
        d = self.as_dict()
        for k, v in other.terms:
            d[k] = d.get(k, SqrtThreeNumber(0)) + v
        return LogPiForm.from_dict(self.a_abs, self.b_abs, d)

    def scale(self, c) -> "LogPiForm":
        c = SqrtThreeNumber.coerce(c)
        return LogPiForm.from_dict(self.a_abs, self.b_abs, {k: v * c for k, v in self.terms})

    def evaluate(self, ctx: PrecisionContext | None = None):
        ctx = ctx or PrecisionContext.from_digits(30)
        with ctx.working():
            la = mpmath.log(mpmath.mpf(self.a_abs.numerator) / self.a_abs.denominator)
            lb = mpmath.log(mpmath.mpf(self.b_abs.numerator) / self.b_abs.denominator)
            return mpmath.fsum(
                c.to_mpf(ctx) * mpmath.pi**i * la**j * lb**l for (i, j, l), c in self.terms
            )

    def __str__(self):
        parts = []
        for (i, j, l), c in self.terms:
            factors = [f"({c})"]
            if i:
                factors.append("pi" if i == 1 else f"pi^{i}")
            if j:
                factors.append("log|a|" if j == 1 else f"log|a|^{j}")
            if l:
                factors.append("log|b|" if l == 1 else f"log|b|^{l}")
            parts.append("*".join(factors))
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class IntegralParams:
    a: Fraction
    b: Fraction
    k: int

    @classmethod
    def make(cls, a, b, k: int) -> "IntegralParams":
        if not isinstance(k, int) or k < 0:
            raise DomainError("k must be a non-negative integer")
        a, b = as_fraction(a), as_fraction(b)
        if a == 0 or b == 0:
            raise DomainError("a and b must be nonzero")
        return cls(a, b, k)

    def require_positive(self):
        if self.a <= 0 or self.b <= 0:
            raise DomainError("this integral needs a > 0 and b > 0")
        if self.a == self.b:
            raise DegenerateParametersError("a = b is outside the formula's domain")

    def require_distinct_magnitudes(self):
        if abs(self.a) == abs(self.b):
            raise DegenerateParametersError("|a| = |b| is outside the formula's domain")


def _poly_term(poly, angle: Fraction, k: int, which: str, p: IntegralParams) -> LogPiForm:
    """angle^(k+1) * poly(log|which| / angle), with angle a multiple of pi."""
    d: Dict[Key, SqrtThreeNumber] = {}
    for e, c in enumerate(poly.dense()):
        if c.is_zero():
            continue
        pi_pow = k + 1 - e
        coeff = c * (angle**pi_pow)
        key = (pi_pow, e, 0) if which == "a" else (pi_pow, 0, e)
        d[key] = d.get(key, SqrtThreeNumber(0)) + coeff
    return LogPiForm.from_dict(abs(p.a), abs(p.b), d)


def _zero(p: IntegralParams) -> LogPiForm:
    return LogPiForm.from_dict(abs(p.a), abs(p.b), {})


def _quad_factor(p: IntegralParams) -> SqrtThreeNumber:
    """1 / (sqrt3 (a^2+ab+b^2))."""
    return SqrtThreeNumber(0, Fraction(1, 3) / (p.a * p.a + p.a * p.b + p.b * p.b))


def _cubic_factor(p: IntegralParams) -> SqrtThreeNumber:
    """(a+b) / (a^3-b^3)."""
    return SqrtThreeNumber((p.a + p.b) / (p.a**3 - p.b**3))


def _f_part(p: IntegralParams, even_fam: str, odd_fam: str, angle: Fraction) -> LogPiForm:
    k = p.k
    E, O = get_poly(even_fam, k), get_poly(odd_fam, k)
    first = _poly_term(E, angle, k, "a", p) + _poly_term(E, angle, k, "b", p).scale(-1)
    second = _poly_term(O, angle, k, "a", p) + _poly_term(O, angle, k, "b", p)
    return first.scale(_cubic_factor(p)) + second.scale(_quad_factor(p))


def _g_part(p: IntegralParams, even_fam: str, odd_fam: str, extra_fam: str, angle: Fraction) -> LogPiForm:
    k = p.k
    E, O, X = get_poly(even_fam, k), get_poly(odd_fam, k), get_poly(extra_fam, k)
    first = (
        _poly_term(E, angle, k, "a", p).scale(-1)
        + _poly_term(E, angle, k, "b", p).scale(3)
        + _poly_term(X, angle, k, "a", p)
    )
    second = _poly_term(O, angle, k, "a", p) + _poly_term(O, angle, k, "b", p).scale(-1)
    q1 = SqrtThreeNumber(Fraction(1, 3) / (p.a * p.a + p.a * p.b + p.b * p.b))
    q2 = SqrtThreeNumber(0, Fraction(1, 3)) * ((p.a + p.b) / (p.a**3 - p.b**3))
    return first.scale(q1) + second.scale(q2)


def closed_form(which: str, a, b, k: int) -> LogPiForm:
    """Exact value of the named integral through the recursive families."""
    p = IntegralParams.make(a, b, k)
    if which == "f1":
        p.require_positive()
        return _f_part(p, "R", "S", THETA)
    if which == "f2":
        p.require_positive()
        return _f_part(p, "P", "Q", DELTA)
    if which == "g1":
        p.require_positive()
        return _g_part(p, "R", "S", "Y", THETA)
    if which == "g2":
        p.require_positive()
        return _g_part(p, "P", "Q", "Z", DELTA)
    if which == "fsum":
        p.require_distinct_magnitudes()
        return _f_part(p, "R", "S", THETA) + _f_part(p, "P", "Q", DELTA)
    if which == "gsum":
        p.require_distinct_magnitudes()
        return _g_part(p, "R", "S", "Y", THETA) + _g_part(p, "P", "Q", "Z", DELTA)
    raise ValueError(f"unknown integral {which!r}; expected one of {INTEGRALS}")


# ---------------------------------------------------------------------------
# The same integrals through the series-defined families A..O

_R3 = SqrtThreeNumber(0, 1)


def _series_term(fam: str, k: int, angle: Fraction, which: str, p: IntegralParams, c) -> LogPiForm:
    return _poly_term(extract_family(fam, k), angle, k, which, p).scale(c)


def alternate_form(which: str, a, b, k: int) -> LogPiForm:
    """Exact value through the series families, for f1, f2, g1, g2.

    Every polynomial carries the same power angle^(k+1).  Two printed
    variants needed changing, and both changes were confirmed by quadrature.
    The odd-index f2 form takes C with a minus sign.  The odd-index g1 form
    takes theta^(2n+2) on its second bracket.
    """
    p = IntegralParams.make(a, b, k)
    p.require_positive()
    cub, quad = _cubic_factor(p), _quad_factor(p)
    q3 = SqrtThreeNumber(Fraction(1, 3) / (p.a * p.a + p.a * p.b + p.b * p.b))  # 1/(3(a^2+ab+b^2))
    even = k % 2 == 0

    def t(fam, whichlog, c, angle):
        return _series_term(fam, k, angle, whichlog, p, c)

    if which == "f1":
        X, Y = ("A", "B") if even else ("B", "A")
        part1 = t(X, "a", -_R3 / 4, THETA) + t(X, "b", _R3 / 4, THETA)
        part2 = t(Y, "a", SqrtThreeNumber(Fraction(3, 4)), THETA) + t(Y, "b", SqrtThreeNumber(Fraction(3, 4)), THETA)
        return part1.scale(cub) + part2.scale(quad)
    if which == "f2":
        if even:
            part1 = t("C", "a", -2 * _R3, DELTA) + t("C", "b", 2 * _R3, DELTA)
            part2 = t("D", "a", SqrtThreeNumber(-6), DELTA) + t("D", "b", SqrtThreeNumber(-6), DELTA)
        else:
            part1 = t("D", "a", -2 * _R3, DELTA) + t("D", "b", 2 * _R3, DELTA)
            part2 = t("C", "a", SqrtThreeNumber(-6), DELTA) + t("C", "b", SqrtThreeNumber(-6), DELTA)
        return part1.scale(cub) + part2.scale(quad)
    if which == "g1":
        X, Y = ("E", "F") if even else ("F", "E")
        K_, L_ = ("K", "L") if even else ("L", "K")
        part1 = t(X, "a", 3, THETA) + t(K_, "b", 3 * _R3, THETA) + t("G", "a", -3, THETA)
        part2 = t(Y, "a", _R3, THETA) + t(L_, "b", SqrtThreeNumber(3), THETA)
        return part1.scale(q3) + part2.scale(cub / _R3)
    if which == "g2":
        X, Y = ("U", "V") if even else ("V", "U")
        N_, O_ = ("N", "O") if even else ("O", "N")
        part1 = t(N_, "b", -6 * _R3, DELTA) + t(X, "a", 6, DELTA) + t("W", "a", -6, DELTA)
        part2 = t(O_, "b", 2 * _R3 * _R3, DELTA) + t(Y, "a", 2 * _R3, DELTA)
        return part1.scale(q3) + part2.scale(cub / _R3)
    raise ValueError(f"alternate form not available for {which!r}")


def evaluate(which: str, a, b, k: int, ctx: PrecisionContext | None = None):
    return closed_form(which, a, b, k).evaluate(ctx)


def _make(which: str) -> Callable:
    def fn(a, b, k: int, ctx: PrecisionContext | None = None):
        return evaluate(which, a, b, k, ctx)

    fn.__name__ = which if which not in ("fsum", "gsum") else which[0] + "_sum"
    fn.__doc__ = f"Numeric value of {which}(k) at the working precision of ``ctx``."
    return fn


f1 = _make("f1")
f2 = _make("f2")
g1 = _make("g1")
g2 = _make("g2")
f_sum = _make("fsum")
g_sum = _make("gsum")
