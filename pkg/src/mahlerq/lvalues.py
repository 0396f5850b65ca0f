"""Zeta values, L(chi_-3, s), polylogarithms on the unit circle, and exact identities.

Every value used by the measure formulas reduces to a Hurwitz zeta value
zeta(s, q) at integer s >= 2 and rational q.  Those values come from an
Euler-Maclaurin evaluation written here.  mpmath supplies only the
arbitrary-precision floats, plus an independent reference in the tests.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

import mpmath

from .field import PrecisionContext, PrecisionError, SqrtThreeNumber
from .series import bernoulli

__all__ = [
    "chi3",
    "hurwitz_zeta",
    "zeta_odd",
    "zeta_direct",
    "l_chi3",
    "l_chi3_direct",
    "polylog",
    "polylog_root",
    "IDENTITIES",
    "IdentityValue",
    "UnknownIdentityError",
    "reduce_identity",
    "identity_sides",
    "deriv_factor",
    "deriv_basis",
    "BasisTerm",
]

_CHI3 = (0, 1, -1)


def chi3(n: int) -> int:
    """The odd primitive character mod 3."""
    return _CHI3[n % 3]


def _default_ctx(ctx):
    return ctx if ctx is not None else PrecisionContext.from_digits(30)


def _hurwitz_em(s: int, q: Fraction, ctx: PrecisionContext):
    """zeta(s, q) by Euler-Maclaurin with an adaptively chosen cutoff N.

    The Bernoulli tail is summed until a term drops below the working epsilon.
    If the terms turn around first, N is doubled and the sum restarted.
    """
    with ctx.working():
        eps = mpmath.mpf(2) ** (-ctx.bits)
        qm = mpmath.mpf(q.numerator) / q.denominator
        N = max(8, ctx.target_digits)
        while True:
            head = mpmath.fsum(mpmath.power(n + qm, -s) for n in range(N))
            x = N + qm
            total = head + mpmath.power(x, 1 - s) / (s - 1) + mpmath.power(x, -s) / 2
            rising = mpmath.mpf(s)  # s (s+1) ... (s+2k-2)
            xpow = mpmath.power(x, -s - 1)
            prev = None
            converged = False
            for k in range(1, 4 * ctx.bits):
                term = mpmath.mpf(bernoulli(2 * k).numerator) / bernoulli(2 * k).denominator
                term = term / math.factorial(2 * k) * rising * xpow
                total += term
                if abs(term) < eps * abs(total):
                    converged = True
                    break
                if prev is not None and abs(term) > abs(prev):
                    break
                prev = term
                rising *= (s + 2 * k - 1) * (s + 2 * k)
                xpow /= x * x
            if converged:
                return +total
            N *= 2
            if N > 10**6:
                raise PrecisionError(f"Euler-Maclaurin failed to converge for zeta({s}, {q})")


@lru_cache(maxsize=4096)
def _hurwitz_cached(s: int, q: Fraction, bits: int, digits: int):
    return _hurwitz_em(s, q, PrecisionContext(bits, digits))


def hurwitz_zeta(s: int, q, ctx: PrecisionContext | None = None):
    """zeta(s, q) = sum_{n>=0} (n+q)^-s for integer s >= 2 and rational 0 < q <= 1."""
    ctx = _default_ctx(ctx)
    if not isinstance(s, int) or s < 2:
        raise ValueError("s must be an integer >= 2")
    q = Fraction(q)
    if not 0 < q <= 1:
        raise ValueError("q must lie in (0, 1]")
    return _hurwitz_cached(s, q, ctx.bits, ctx.target_digits)


def zeta_odd(m: int, ctx: PrecisionContext | None = None):
    """zeta(m) for odd m >= 3."""
    if not isinstance(m, int) or m < 3 or m % 2 == 0:
        raise ValueError("m must be an odd integer >= 3")
    return hurwitz_zeta(m, 1, ctx)


def zeta_direct(m: int, terms: int = 200_000) -> Tuple[float, float]:
    """Plain partial sum with the integral tail bracket, in double precision.

    Returns (estimate, half-width of the tail bracket).
    """
    partial = math.fsum(n ** (-float(m)) for n in range(terms, 0, -1))
    lo = (terms + 1) ** (1 - m) / (m - 1)
    hi = terms ** (1 - m) / (m - 1)
    return partial + (lo + hi) / 2, (hi - lo) / 2


def l_chi3(s: int, ctx: PrecisionContext | None = None):
    """L(chi_-3, s) = 3^-s (zeta(s, 1/3) - zeta(s, 2/3)) for integer s >= 2."""
    ctx = _default_ctx(ctx)
    if not isinstance(s, int) or s < 2:
        raise ValueError("s must be an integer >= 2")
    with ctx.working():
        diff = hurwitz_zeta(s, Fraction(1, 3), ctx) - hurwitz_zeta(s, Fraction(2, 3), ctx)
        return diff / mpmath.power(3, s)


def l_chi3_direct(s: int, groups: int = 200_000) -> Tuple[float, float]:
    """Character series summed in period blocks, double precision.

    Block k is (3k+1)^-s - (3k+2)^-s, which lies between s (3k+2)^(-s-1) and
    s (3k+1)^(-s-1).  Integral comparison then brackets the tail between
    (3K+2)^-s / 3 and (3K-2)^-s / 3.  Returns (estimate, half-width).
    """
    fs = float(s)
    partial = math.fsum((3 * k + 1) ** (-fs) - (3 * k + 2) ** (-fs) for k in range(groups - 1, -1, -1))
    lo = (3 * groups + 2) ** (-fs) / 3
    hi = (3 * groups - 2) ** (-fs) / 3
    return partial + (lo + hi) / 2, (hi - lo) / 2


def polylog_root(n: int, turns, ctx: PrecisionContext | None = None):
    """Li_n(exp(2 pi i turns)) for rational ``turns`` (a root of unity).

    Splitting k = q m + r gives Li_n = q^-n sum_{r=1}^{q} e(p r / q) zeta(n, r/q).
    """
    ctx = _default_ctx(ctx)
    if n < 2:
        raise ValueError("n must be >= 2 on the unit circle")
    t = Fraction(turns) % 1
    p, q = t.numerator, t.denominator
    with ctx.working():
        total = mpmath.mpc(0)
        for r in range(1, q + 1):
            phase = Fraction(p * r, q) % 1
            total += _unit(phase, ctx) * hurwitz_zeta(n, Fraction(r, q), ctx)
        return total / mpmath.power(q, n)


def _unit(turns: Fraction, ctx: PrecisionContext):
    """exp(2 pi i turns), exact for multiples of 1/12 and correctly rounded otherwise."""
    from .series import exact_cos, exact_sin

    with ctx.working():
        if (turns * 12).denominator == 1:
            phi = 2 * turns
            return mpmath.mpc(exact_cos(phi).to_mpf(ctx), exact_sin(phi).to_mpf(ctx))
        return mpmath.expjpi(2 * mpmath.mpf(turns.numerator) / turns.denominator)


def polylog(n: int, z, ctx: PrecisionContext | None = None, max_denominator: int = 24):
    """Li_n(z) for |z| <= 1 and integer n >= 2.

    Inside the disk the defining series is summed until its tail bound
    |z|^(K+1) / ((1 - |z|) K^n) drops below the working epsilon.  On the
    circle, z must be a root of unity of order at most ``max_denominator``.
    It is then evaluated through Hurwitz zeta values.  A Python float or
    complex within 1e-12 of such a root is snapped onto it.
    """
    ctx = _default_ctx(ctx)
    if n < 2:
        raise ValueError("n must be >= 2")
    # double-precision inputs cannot pin a root of unity better than ~1e-12
    loose = isinstance(z, (int, float, complex))
    with ctx.working():
        z = mpmath.mpc(z)
        r = abs(z)
        eps = mpmath.mpf(2) ** (-ctx.bits)
        tol = mpmath.mpf(10) ** -12 if loose else mpmath.mpf(2) ** (-(ctx.bits // 2))
        if r > 1 + tol:
            raise ValueError("polylog is only provided on the closed unit disk")
        if r == 0:
            return mpmath.mpc(0)
        if abs(r - 1) <= tol:
            turns = mpmath.arg(z) / (2 * mpmath.pi)
            guess = Fraction(float(turns)).limit_denominator(max_denominator)
            if abs(turns - mpmath.mpf(guess.numerator) / guess.denominator) > tol:
                raise PrecisionError("unit-circle argument is not a supported root of unity")
            return polylog_root(n, guess, ctx)
        total = mpmath.mpc(0)
        power = mpmath.mpc(1)
        K = 0
        while True:
            K += 1
            power *= z
            total += power / mpmath.power(K, n)
            bound = r ** (K + 1) / ((1 - r) * mpmath.power(K, n))
            if bound < eps * max(abs(total), eps):
                return total
            if K > 10**7:
                raise PrecisionError("polylog series too slow near the unit circle")


# ---------------------------------------------------------------------------
# Exact identities for sixth-root polylog combinations


class UnknownIdentityError(KeyError):
    pass


@dataclass(frozen=True)
class IdentityValue:
    """``combination = coeff * target(weight)`` where target is zeta or i*L."""

    name: str
    h: int
    weight: int
    target: str  # "zeta" or "iL"
    coeff: SqrtThreeNumber


# canonical name -> (weight offset: 1 for 2h+1, 2 for 2h+2; target; min h; terms)
# terms are (sign, turns) pairs describing the polylog combination
IDENTITIES = {
    "Li(1)": (1, "zeta", 1, ((1, Fraction(0)),)),
    "Li(-1)": (1, "zeta", 1, ((1, Fraction(1, 2)),)),
    "Li(w)+Li(w2)": (1, "zeta", 1, ((1, Fraction(1, 3)), (1, Fraction(2, 3)))),
    "Li(-w)+Li(-w2)": (1, "zeta", 1, ((1, Fraction(5, 6)), (1, Fraction(1, 6)))),
    "Li(w2)-Li(w)": (2, "iL", 0, ((1, Fraction(2, 3)), (-1, Fraction(1, 3)))),
    "Li(-w)-Li(-w2)": (2, "iL", 0, ((1, Fraction(5, 6)), (-1, Fraction(1, 6)))),
}


def _canonical_name(name: str) -> str:
    s = name.replace("ω", "w").replace("²", "2").replace("−", "-").replace("\\omega", "w")
    s = re.sub(r"weight\s*2h\+[12]", "", s)
    s = re.sub(r"_\{?[^()]*?\}?(?=\()", "", s)  # drop subscripts such as _{2h+1}
    s = s.replace("^2", "2").replace(" ", "")
    return s


def reduce_identity(name: str, h: int) -> IdentityValue:
    """Exact coefficient of the named identity at index h."""
    key = _canonical_name(name)
    if key not in IDENTITIES:
        raise UnknownIdentityError(f"unknown identity {name!r}; known: {sorted(IDENTITIES)}")
    offset, target, h_min, _ = IDENTITIES[key]
    if h < h_min:
        raise ValueError(f"identity {key} requires h >= {h_min}")
    q4 = Fraction(1, 4**h)
    q9 = Fraction(1, 9**h)
    if key == "Li(1)":
        c = SqrtThreeNumber(1)
    elif key == "Li(-1)":
        c = SqrtThreeNumber(-(1 - q4))
    elif key == "Li(w)+Li(w2)":
        c = SqrtThreeNumber(-(1 - q9))
    elif key == "Li(-w)+Li(-w2)":
        c = SqrtThreeNumber((1 - q9) * (1 - q4))
    elif key == "Li(w2)-Li(w)":
        c = SqrtThreeNumber(0, -1)
    else:  # "Li(-w)-Li(-w2)"
        c = SqrtThreeNumber(0, -(1 + Fraction(1, 2 ** (2 * h + 1))))
    return IdentityValue(key, h, 2 * h + offset, target, c)


def identity_sides(name: str, h: int, ctx: PrecisionContext | None = None, method: str = "hurwitz"):
    """Numeric (lhs, rhs) of an identity.

    The left side sums polylogarithms.  The right side is the exact
    coefficient times zeta or i*L.  ``method`` selects how the polylogarithms
    are computed: "hurwitz" (this module) or "mpmath" (mpmath.polylog).
    """
    ctx = _default_ctx(ctx)
    iv = reduce_identity(name, h)
    _, _, _, terms = IDENTITIES[iv.name]
    with ctx.working():
        lhs = mpmath.mpc(0)
        for sign, turns in terms:
            if method == "hurwitz":
                val = polylog_root(iv.weight, turns, ctx)
            elif method == "mpmath":
                val = mpmath.polylog(iv.weight, mpmath.expjpi(2 * mpmath.mpf(turns.numerator) / turns.denominator))
            else:
                raise ValueError(f"unknown method {method!r}")
            lhs += sign * val
        coeff = iv.coeff.to_mpf(ctx)
        if iv.target == "zeta":
            rhs = mpmath.mpc(coeff * zeta_odd(iv.weight, ctx))
        else:
            rhs = mpmath.mpc(0, coeff * l_chi3(iv.weight, ctx))
        return lhs, rhs


# ---------------------------------------------------------------------------
# Derivative basis


def deriv_factor(h: int, which: str) -> SqrtThreeNumber:
    """Exact factor F with  derivative value = F * critical value.

    zeta'(-2h) = (-1)^h (2h)! / 2^(2h+1) * zeta(2h+1)/pi^(2h),  h >= 1.
    L'(chi,1-2n) = (-1)^(n+1) (2n-1)! 3^(2n) / (2^(2n) sqrt3) * L(2n)/pi^(2n-1),
    with n = h+1 so that 1-2n = -2h-1.
    """
    if which == "zeta":
        if h < 1:
            raise ValueError("zeta'(-2h) needs h >= 1")
        return SqrtThreeNumber(Fraction((-1) ** h * math.factorial(2 * h), 2 ** (2 * h + 1)))
    if which == "L":
        if h < 0:
            raise ValueError("L'(chi,-2h-1) needs h >= 0")
        n = h + 1
        rat = Fraction((-1) ** (n + 1) * math.factorial(2 * n - 1) * 3 ** (2 * n), 2 ** (2 * n))
        return SqrtThreeNumber(0, rat / 3)  # divide by sqrt3 = multiply by sqrt3/3
    raise ValueError("which must be 'zeta' or 'L'")


def deriv_basis(h: int, which: str, ctx: PrecisionContext | None = None, method: str = "functional"):
    """(value, exact factor) for zeta'(-2h) or L'(chi_-3, -2h-1).

    ``functional`` multiplies the critical value by the exact factor.
    ``direct`` differentiates mpmath's Hurwitz zeta and is used only as an
    independent check.
    """
    ctx = _default_ctx(ctx)
    factor = deriv_factor(h, which)
    with ctx.working():
        if method == "functional":
            crit = BasisTerm(which, h).evaluate(ctx)
            return factor.to_mpf(ctx) * crit, factor
        if method == "direct":
            if which == "zeta":
                return mpmath.zeta(-2 * h, derivative=1), factor
            s = -2 * h - 1
            three_s = mpmath.power(3, -s)
            diff = mpmath.zeta(s, mpmath.mpf(1) / 3) - mpmath.zeta(s, mpmath.mpf(2) / 3)
            ddiff = mpmath.zeta(s, mpmath.mpf(1) / 3, derivative=1) - mpmath.zeta(
                s, mpmath.mpf(2) / 3, derivative=1
            )
            return three_s * (ddiff - mpmath.log(3) * diff), factor
        raise ValueError(f"unknown method {method!r}")


_KIND_ORDER = {"zeta": 0, "L": 1}


@dataclass(frozen=True)
class BasisTerm:
    """One basis element.

    Critical basis: zeta -> zeta(2h+1)/pi^(2h) and L -> L(chi,2h+2)/pi^(2h+1).
    Derivative basis: zeta -> zeta'(-2h) and L -> L'(chi,-2h-1).
    """

    kind: str
    h: int
    derivative: bool = False

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError("kind must be 'zeta' or 'L'")
        if self.kind == "zeta" and self.h < 1:
            raise ValueError("zeta terms need h >= 1")
        if self.kind == "L" and self.h < 0:
            raise ValueError("L terms need h >= 0")

    def sort_key(self):
        return (self.derivative, _KIND_ORDER[self.kind], self.h)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def label(self) -> str:
        if self.derivative:
            return f"zeta'(-{2 * self.h})" if self.kind == "zeta" else f"L'(chi_-3,-{2 * self.h + 1})"
        if self.kind == "zeta":
            return f"zeta({2 * self.h + 1})/pi^{2 * self.h}"
        return f"L(chi_-3,{2 * self.h + 2})/pi^{2 * self.h + 1}"

    def evaluate(self, ctx: PrecisionContext | None = None, method: str = "functional"):
        ctx = _default_ctx(ctx)
        if self.derivative:
            return deriv_basis(self.h, self.kind, ctx, method)[0]
        with ctx.working():
            if self.kind == "zeta":
                return zeta_odd(2 * self.h + 1, ctx) / mpmath.pi ** (2 * self.h)
            return l_chi3(2 * self.h + 2, ctx) / mpmath.pi ** (2 * self.h + 1)
