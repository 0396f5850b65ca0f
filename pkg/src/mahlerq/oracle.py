"""Independent numerical checks by quadrature.

Everything here runs in double precision on top of QUADPACK
(``scipy.integrate.quad``, adaptive 21-point Gauss-Kronrod).  The half-line
(0, oo) is split at 1 and both pieces are mapped by t = e^(-u) and t = e^u,
which turns the log^k endpoint behaviour into exponential decay.

Principal values are handled by writing the singular piece as h(t)/(t - p)
with h computed in factored form, so h never suffers the cancellation of
t^3 - a^3 near t = a.  Two PV strategies exist: QUADPACK's Cauchy weight on
a symmetric window, and a symmetric-excision schedule whose limit is taken
by Richardson extrapolation in the odd powers of the radius.
"""

from __future__ import annotations

import math
import random
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

__all__ = [
    "OracleError",
    "QuadratureSpec",
    "QuadResult",
    "quad_log_integral",
    "pv_excision_estimates",
    "base_integral",
    "torus_measure",
    "Check",
    "VerifyReport",
    "verify_suite",
    "SUITES",
]

SUITES = ("polys", "integrals", "identities", "measures", "torus")

_SQRT3 = math.sqrt(3.0)
_UMAX = 80.0  # e^-80 is far below double precision relative to any O(1) integral


class OracleError(ArithmeticError):
    """Quadrature did not reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """What to integrate and how hard to try.

    ``integrand`` is one of f1, f2, g1, g2, fsum, gsum.  ``pv_excision`` set
    to a radius schedule switches the principal value from the Cauchy-weight
    rule to symmetric excision plus extrapolation.
    """

    integrand: str
    a: float
    b: float
    k: int
    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_subdivisions: int = 400
    pv_excision: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.a == 0 or self.b == 0:
            raise ValueError("a and b must be nonzero")


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    evaluations: int = 0


# ---------------------------------------------------------------------------
# Integrands.  Each returns (regular(t), polar) where polar is None or
# (p, h) meaning an extra term h(t)/(t - p).


def _logk(t, k):
    return np.log(t) ** k if k else np.ones_like(t)


def _parts(which: str, a: float, b: float, k: int):
    q = lambda t, c: t * t + c * t + c * c  # noqa: E731  (never zero for real c != 0)

    def f1(t):
        return t * _logk(t, k) / (q(t, a) * q(t, b))

    def f2(t):
        return t * _logk(t, k) / (q(t, -a) * q(t, -b))

    # t^3 - a^3 = (t - a) q(t, a); t^3 + a^3 = (t + a) q(t, -a)
    def g1_h(t):
        return t * (t + a) * _logk(t, k) / (q(t, a) * q(t, b))

    def g2_h(t):
        return t * (t - a) * _logk(t, k) / (q(t, -a) * q(t, -b))

    def g1_full(t):
        return g1_h(t) / (t - a)

    def g2_full(t):
        return g2_h(t) / (t + a)

    if which == "f1":
        _require_pos(a, b)
        return f1, None
    if which == "f2":
        _require_pos(a, b)
        return f2, None
    if which == "fsum":
        return (lambda t: f1(t) + f2(t)), None
    if which == "g1":
        _require_pos(a, b)
        return (lambda t: np.zeros_like(t)), (a, g1_h)
    if which == "g2":
        _require_pos(a, b)
        return g2_full, None
    if which == "gsum":
        # exactly one of the two terms has a pole on (0, oo), at t = |a|
        if a > 0:
            return g2_full, (a, g1_h)
        return g1_full, (-a, g2_h)
    raise ValueError(f"unknown integrand {which!r}")


def _require_pos(a, b):
    if a <= 0 or b <= 0:
        raise ValueError("this integrand needs a > 0 and b > 0")


# ---------------------------------------------------------------------------
# Quadrature primitives


class _Counter:
    def __init__(self, f):
        self.f = f
        self.n = 0

    def __call__(self, x):
        self.n += 1
        return float(self.f(np.asarray(x, dtype=float)))


def _quad(f, lo, hi, spec: QuadratureSpec, **kw) -> Tuple[float, float, int]:
    c = _Counter(f)
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(
                c, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=spec.max_subdivisions, **kw
            )
        except integrate.IntegrationWarning as exc:
            raise OracleError(f"quadrature on [{lo}, {hi}] did not converge: {exc}") from None
    return val, err, c.n


def _interval(f, lo: float, hi: float, spec: QuadratureSpec) -> Tuple[float, float, int]:
    """Integral of f over (lo, hi) with 0 <= lo < hi <= oo, log-mapped where needed."""
    total = err = 0.0
    n = 0
    pieces: List[Tuple[float, float]] = []
    if lo < 1.0 < hi:
        pieces = [(lo, 1.0), (1.0, hi)]
    else:
        pieces = [(lo, hi)]
    for x0, x1 in pieces:
        if x1 <= 1.0:
            # t = e^-u, u from -log x1 to -log x0
            u0 = -math.log(x1)
            u1 = _UMAX if x0 == 0 else -math.log(x0)
            g = lambda u: f(np.exp(-u)) * np.exp(-u)  # noqa: E731
        else:
            u0 = math.log(x0)
            u1 = max(_UMAX, u0 + _UMAX) if math.isinf(x1) else math.log(x1)
            g = lambda u: f(np.exp(u)) * np.exp(u)  # noqa: E731
        v, e, m = _quad(g, u0, u1, spec)
        total += v
        err += e
        n += m
    return total, err, n


def _pv_cauchy(p: float, h, spec: QuadratureSpec) -> Tuple[float, float, int]:
    """PV of h(t)/(t-p) over (0, oo)."""
    r = p / 2
    v1, e1, n1 = _interval(lambda t: h(t) / (t - p), 0.0, p - r, spec)
    v2, e2, n2 = _quad(h, p - r, p + r, spec, weight="cauchy", wvar=p)
    v3, e3, n3 = _interval(lambda t: h(t) / (t - p), p + r, math.inf, spec)
    return v1 + v2 + v3, e1 + e2 + e3, n1 + n2 + n3


def pv_excision_estimates(p: float, h, radii: Sequence[float], spec: QuadratureSpec):
    """Excised integrals over (0, oo) minus (p-eps, p+eps), one per radius.

    The excision error is an odd series c1 eps + c3 eps^3 + ..., so three
    radii determine the limit after removing the first two terms.
    Returns (estimates, extrapolated value, error estimate, evaluations).
    """
    r = p / 2
    outer = [_interval(lambda t: h(t) / (t - p), 0.0, p - r, spec), _interval(lambda t: h(t) / (t - p), p + r, math.inf, spec)]
    base = sum(o[0] for o in outer)
    err = sum(o[1] for o in outer)
    n = sum(o[2] for o in outer)
    fold = lambda u: (h(p + u) - h(p - u)) / u  # noqa: E731
    ests = []
    for eps in radii:
        v, e, m = _quad(fold, eps, r, spec)
        ests.append(base + v)
        err += e
        n += m
    if len(radii) >= 3:
        eps = np.asarray(radii[:3], dtype=float)
        A = np.stack([np.ones(3), eps, eps**3], axis=1)
        limit = float(np.linalg.solve(A, np.asarray(ests[:3]))[0])
        # linear-only extrapolation from the two smallest radii
        e1, e2 = radii[1], radii[2]
        lin = (ests[2] * e1 - ests[1] * e2) / (e1 - e2)
        err += abs(limit - lin)
    else:
        limit = ests[-1]
    return ests, limit, err, n


def quad_log_integral(spec: QuadratureSpec) -> QuadResult:
    """Value of the integrand named in ``spec`` over (0, oo), PV at any pole."""
    regular, polar = _parts(spec.integrand, spec.a, spec.b, spec.k)
    v, e, n = _interval(regular, 0.0, math.inf, spec)
    if polar is not None:
        p, h = polar
        if spec.pv_excision:
            _, pv, pe, pn = pv_excision_estimates(p, h, spec.pv_excision, spec)
        else:
            pv, pe, pn = _pv_cauchy(p, h, spec)
        v, e, n = v + pv, e + pe, n + pn
    return QuadResult(v, e, n)


def base_integral(kind: str, h: int, spec: Optional[QuadratureSpec] = None) -> QuadResult:
    """The two canonical single integrals, computed on (0, 1).

    zeta kind (h >= 1): int_0^1 log^(2h) t [(1+t)/(1-t^3) + (1-t)/(1+t^3)] dt.
    L kind (h >= 0): -int_0^1 log^(2h+1) t [1/(t^2+t+1) + 1/(t^2-t+1)] dt.
    With t = e^-u both become integrals of u^m e^(-u) times a bounded factor.
    """
    spec = spec or QuadratureSpec("f1", 1.0, 2.0, 0)
    if kind == "zeta":
        if h < 1:
            raise ValueError("the zeta base integral needs h >= 1")

        def g(u):
            x = np.exp(-u)
            return u ** (2 * h) * x * ((1 + x) / -np.expm1(-3 * u) + (1 - x) / (1 + x**3))

    elif kind == "L":
        if h < 0:
            raise ValueError("h must be non-negative")

        def g(u):
            x = np.exp(-u)
            # log^(2h+1) t = -u^(2h+1); the leading minus cancels it
            return u ** (2 * h + 1) * x * (1 / (x * x + x + 1) + 1 / (x * x - x + 1))

    else:
        raise ValueError("kind must be 'zeta' or 'L'")
    hi = max(_UMAX, 4.0 * (2 * h + 2) + 60.0)
    v, e, n = _quad(g, 0.0, hi, spec)
    return QuadResult(v, e, n)


# ---------------------------------------------------------------------------
# Torus quadrature


def _x_of_theta(theta):
    """(conj(w) z + w)/(z + 1) at z = e^(i theta), which is real."""
    return -0.5 + 0.5 * _SQRT3 * np.tan(theta / 2)


def _theta_of_x(x: float) -> float:
    return 2.0 * math.atan((2 * x + 1) / _SQRT3)


def torus_measure(n: int, tol: float = 1e-9) -> QuadResult:
    """m(Q_n) for n = 1, 2 by quadrature directly over the torus angles.

    The y-variable is removed with Jensen's formula, leaving the average of
    log+ |x(theta_1) ... x(theta_n)| over (-pi, pi)^n.
    """
    spec = QuadratureSpec("f1", 1.0, 2.0, 0, abs_tol=tol, rel_tol=tol, max_subdivisions=500)
    logabs = lambda th: np.log(np.abs(_x_of_theta(th)))  # noqa: E731

    def arcs(c: float):
        """Sub-intervals of (-pi, pi) where |x(theta)| > c."""
        return [(-math.pi, _theta_of_x(-c)), (_theta_of_x(c), math.pi)]

    if n == 1:
        total = err = 0.0
        calls = 0
        for lo, hi in arcs(1.0):
            v, e, m = _quad(logabs, lo, hi, spec)
            total, err, calls = total + v, err + e, calls + m
        return QuadResult(total / (2 * math.pi), err / (2 * math.pi), calls)
    if n == 2:
        calls = [0]
        inner_spec = QuadratureSpec("f1", 1.0, 2.0, 0, abs_tol=tol * 0.1, rel_tol=tol * 0.1, max_subdivisions=500)

        def inner(t1):
            l1 = float(logabs(np.asarray(t1)))
            c = math.exp(-l1)
            s = 0.0
            for lo, hi in arcs(c):
                v, _, m = _quad(lambda t2: l1 + logabs(t2), lo, hi, inner_spec)
                s += v
                calls[0] += m
            return s

        # x(theta_1) vanishes at theta_1 = pi/3, where the inner arcs shrink
        # to the endpoints; split the outer range there.
        z = _theta_of_x(0.0)
        total = err = 0.0
        for lo, hi in ((-math.pi, z), (z, math.pi)):
            v, e, _ = _quad(inner, lo, hi, spec)
            total, err = total + v, err + e
        scale = (2 * math.pi) ** 2
        return QuadResult(total / scale, err / scale, calls[0])
    raise ValueError("torus quadrature is implemented for n = 1 and n = 2 only")


# ---------------------------------------------------------------------------
# Verification batteries


@dataclass
class Check:
    name: str
    target: str
    error: float
    tol: float
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "target": self.target, "error": self.error, "tol": self.tol, "passed": self.passed}


@dataclass
class VerifyReport:
    suite: str
    seed: int
    checks: List[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, target, error: float, tol: float) -> None:
        err = float(error)
        self.checks.append(Check(name, str(target), err, tol, bool(err <= tol)))

    def add_exact(self, name: str, passed: bool, target: str = "exact") -> None:
        self.checks.append(Check(name, target, 0.0 if passed else 1.0, 0.0, bool(passed)))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "ok": self.ok,
            "seconds": round(self.seconds, 3),
            "checks": [c.to_json() for c in self.checks],
        }


def _rel(x: float, y: float) -> float:
    return abs(x - y) / max(1.0, abs(y))


def _suite_polys(rep: VerifyReport, rng: random.Random, tol: float) -> None:
    from .recpoly import get_poly
    from .series import am_expl, bm_expl, extract_family, relation_check
    from .field import ParityPolynomial
    from .tables import PRINTED_ERRATA, PRINTED_POLYS, printed_poly

    for fam, k in PRINTED_POLYS:
        got = extract_family(fam, k) if fam in "AB" else get_poly(fam, k)
        want = printed_poly(fam, k)
        note = "printed table"
        if (fam, k) in PRINTED_ERRATA:
            printed, fixed, why = PRINTED_ERRATA[(fam, k)]
            dense = list(PRINTED_POLYS[(fam, k)])
            dense[0] = fixed
            want = ParityPolynomial.from_dense(dense)
            note = f"corrected table value; printed constant {printed} is a misprint ({why})"
        rep.add_exact(f"{fam}_{k} printed", got == want, note)
    for m in range(0, 13):
        rep.add_exact(f"A_{m} explicit", am_expl(m) == extract_family("A", m), "convolution formula")
        rep.add_exact(f"B_{m} explicit", bm_expl(m) == extract_family("B", m), "convolution formula")
    for n in range(0, 7):
        r = relation_check(n)
        rep.add_exact(f"relations n={n}", r.ok, "; ".join(str(e) for e in r.failures()) or "series relations")


def _random_params(rng: random.Random):
    while True:
        a, b = rng.uniform(0.2, 5.0), rng.uniform(0.2, 5.0)
        if abs(a - b) > 0.05:
            return a, b


def _suite_integrals(rep: VerifyReport, rng: random.Random, tol: float, cases: int = 40) -> None:
    from .closedforms import evaluate
    from .field import PrecisionContext

    ctx = PrecisionContext.from_digits(20)
    for which in ("f1", "f2", "g1", "g2"):
        for _ in range(cases):
            a, b = _random_params(rng)
            k = rng.randint(0, 4)
            fa, fb = Fraction(a), Fraction(b)
            want = float(evaluate(which, fa, fb, k, ctx))
            got = quad_log_integral(QuadratureSpec(which, a, b, k)).value
            t = 1e-6 if which == "g1" and k == 0 else tol
            rep.add(f"{which} a={a:.4f} b={b:.4f} k={k}", want, _rel(got, want), t)
    for which in ("fsum", "gsum"):
        for _ in range(cases):
            a, b = _random_params(rng)
            b = -b
            if rng.random() < 0.3:
                a = -a
            if abs(abs(a) - abs(b)) <= 0.05:
                continue
            k = rng.randint(0, 3)
            want = float(evaluate(which, Fraction(a), Fraction(b), k, ctx))
            got = quad_log_integral(QuadratureSpec(which, a, b, k)).value
            rep.add(f"{which} a={a:.4f} b={b:.4f} k={k}", want, _rel(got, want), tol)
    # PV by excision for g1 at k = 0
    a, b = 1.0, 2.0
    want = math.log(2) / 7
    spec = QuadratureSpec("g1", a, b, 0, pv_excision=(1e-2, 1e-3, 1e-4))
    rep.add("g1 PV excision a=1 b=2 k=0", "ln2/7", _rel(quad_log_integral(spec).value, want), max(tol, 1e-8))


def _suite_identities(rep: VerifyReport, rng: random.Random, tol: float) -> None:
    import mpmath

    from .field import PrecisionContext
    from .lvalues import IDENTITIES, identity_sides, l_chi3, zeta_odd
    from .measure import l_packet, zeta_packet

    ctx = PrecisionContext.from_digits(30)
    for name, (_, _, h_min, _) in IDENTITIES.items():
        for h in range(h_min, 5):
            for method in ("hurwitz", "mpmath"):
                lhs, rhs = identity_sides(name, h, ctx, method=method)
                with ctx.working():
                    err = abs(lhs - rhs) / max(1, abs(rhs))
                rep.add(f"{name} h={h} [{method}]", mpmath.nstr(rhs, 15), err, min(tol, 1e-10))
    for h in range(0, 3):
        with ctx.working():
            want = float(2 * l_packet(h) * l_chi3(2 * h + 2, ctx))
        got = base_integral("L", h).value
        rep.add(f"base L h={h}", want, _rel(got, want), 1e-10)
    for h in range(1, 3):
        with ctx.working():
            want = float(2 * zeta_packet(h) * zeta_odd(2 * h + 1, ctx))
        got = base_integral("zeta", h).value
        rep.add(f"base zeta h={h}", want, _rel(got, want), 1e-10)


def _suite_measures(rep: VerifyReport, rng: random.Random, tol: float) -> None:
    import mpmath

    from .coeffs import build_tables, rationality_audit
    from .field import PrecisionContext
    from .measure import ConsistencyError, expression_from_f_form, measure_expression, measure_numeric
    from .tables import TABLE1

    for n, bases in TABLE1.items():
        for basis, want in bases.items():
            rep.add_exact(f"Table 1 n={n} {basis}", measure_expression(n, basis).as_dict() == want, "Table 1")
        rep.add_exact(f"F-form reduction n={n}", expression_from_f_form(n) == measure_expression(n), "iterated integral")
    audit = rationality_audit(build_tables(10))
    rep.add_exact("rationality audit max_n=10", audit.ok, f"{audit.checked} entries")
    ctx = PrecisionContext.from_digits(30)
    for n in range(1, 9):
        try:
            v = measure_numeric(n, ctx)
            rep.add_exact(f"bases agree n={n}", True, mpmath.nstr(v, 15))
        except ConsistencyError as exc:
            rep.add_exact(f"bases agree n={n}", False, str(exc))


def _suite_torus(rep: VerifyReport, rng: random.Random, tol: float) -> None:
    from .field import PrecisionContext
    from .measure import measure_numeric

    ctx = PrecisionContext.from_digits(20)
    for n, t in ((1, 1e-4), (2, 1e-3)):
        want = float(measure_numeric(n, ctx))
        got = torus_measure(n, tol=1e-9 if n == 1 else 1e-7).value
        rep.add(f"torus n={n}", want, abs(got - want), t)


_SUITE_FUNCS = {
    "polys": _suite_polys,
    "integrals": _suite_integrals,
    "identities": _suite_identities,
    "measures": _suite_measures,
    "torus": _suite_torus,
}


def verify_suite(which: str = "all", seed: int = 42, tol: float = 1e-8) -> VerifyReport:
    """Run one battery (or all of them) and collect every check."""
    names = SUITES if which == "all" else (which,)
    for nm in names:
        if nm not in _SUITE_FUNCS:
            raise ValueError(f"unknown suite {which!r}; expected 'all' or one of {SUITES}")
    rep = VerifyReport(which, seed)
    rng = random.Random(seed)
    start = time.perf_counter()
    for nm in names:
        _SUITE_FUNCS[nm](rep, rng, tol)
    rep.seconds = time.perf_counter() - start
    return rep
