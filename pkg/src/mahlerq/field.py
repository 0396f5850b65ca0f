"""Exact scalars: rationals, the quadratic field Q(sqrt 3), parity polynomials.

Rationals are :class:`fractions.Fraction`.  Elements of Q(sqrt 3) are stored as
an ordered pair of rationals and never pass through a floating surrogate.
Approximate evaluation goes through :class:`PrecisionContext`, which wraps an
mpmath working precision.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

import mpmath

Rational = Fraction

__all__ = [
    "Rational",
    "SqrtThreeNumber",
    "ParityPolynomial",
    "PrecisionContext",
    "ParityError",
    "PrecisionError",
    "as_fraction",
    "fraction_to_str",
    "parse_fraction",
    "sqrt3_add",
    "sqrt3_mul",
    "sqrt3_div",
    "poly_eval",
    "SQRT3",
    "ZERO",
    "ONE",
]


class ParityError(TypeError):
    """Raised when polynomials of different parity are combined additively."""


class PrecisionError(ValueError):
    """Raised when a precision context is inconsistent or a target is unreachable."""


def as_fraction(value) -> Fraction:
    """Convert an int, Fraction, exact decimal string or float to a Fraction.

    Floats are converted exactly (their binary value), never rounded.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    if isinstance(value, mpmath.mpf):
        man, exp = value.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def fraction_to_str(q: Fraction) -> str:
    """Canonical ``"p/q"`` rendering (denominator always present)."""
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


class SqrtThreeNumber:
    """The element ``rat + root*sqrt(3)`` of Q(sqrt 3).

    Instances are immutable and hashable.  Ints and Fractions mix freely in
    arithmetic.
    """

    __slots__ = ("_rat", "_root")

    def __init__(self, rat=0, root=0):
        object.__setattr__(self, "_rat", as_fraction(rat))
        object.__setattr__(self, "_root", as_fraction(root))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("SqrtThreeNumber is immutable")

    @property
    def rat(self) -> Fraction:
        return self._rat

    @property
    def root(self) -> Fraction:
        return self._root

    @classmethod
    def coerce(cls, value) -> "SqrtThreeNumber":
        if isinstance(value, SqrtThreeNumber):
            return value
        return cls(as_fraction(value), 0)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self._rat == 0 and self._root == 0

    def is_rational(self) -> bool:
        return self._root == 0

    def is_pure_root(self) -> bool:
        return self._rat == 0

    def norm(self) -> Fraction:
        """Field norm ``rat**2 - 3*root**2``."""
        return self._rat * self._rat - 3 * self._root * self._root

    def conjugate(self) -> "SqrtThreeNumber":
        return SqrtThreeNumber(self._rat, -self._root)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = SqrtThreeNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return SqrtThreeNumber(self._rat + o._rat, self._root + o._root)

    __radd__ = __add__

    def __neg__(self):
        return SqrtThreeNumber(-self._rat, -self._root)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = SqrtThreeNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return SqrtThreeNumber(self._rat - o._rat, self._root - o._root)

    def __rsub__(self, other):
        try:
            o = SqrtThreeNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = SqrtThreeNumber.coerce(other)
        except TypeError:
            return NotImplemented
        p, q, r, s = self._rat, self._root, o._rat, o._root
        return SqrtThreeNumber(p * r + 3 * q * s, p * s + q * r)

    __rmul__ = __mul__

    def inverse(self) -> "SqrtThreeNumber":
        n = self.norm()
        if n == 0:
            # sqrt 3 is irrational, so the norm vanishes only at zero
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        return SqrtThreeNumber(self._rat / n, -self._root / n)

    def __truediv__(self, other):
        try:
            o = SqrtThreeNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = SqrtThreeNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        try:
            o = SqrtThreeNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self._rat == o._rat and self._root == o._root

    def __hash__(self):
        if self._root == 0:
            return hash(self._rat)
        return hash((self._rat, self._root))

    def __bool__(self):
        return not self.is_zero()

    def sign(self) -> int:
        """Exact sign of the real number ``rat + root*sqrt(3)``."""
        p, q = self._rat, self._root
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (q > 0) - (q < 0)
        if (p > 0) == (q > 0):
            return 1 if p > 0 else -1
        # opposite signs: compare p^2 with 3 q^2
        diff = p * p - 3 * q * q
        dominant = 1 if p > 0 else -1
        return dominant if diff > 0 else -dominant

    # conversions ------------------------------------------------------
    def to_mpf(self, ctx: "PrecisionContext | None" = None):
        ctx = ctx or PrecisionContext.from_digits(30)
        with ctx.working():
            return mpmath.mpf(self._rat.numerator) / self._rat.denominator + (
                mpmath.mpf(self._root.numerator) / self._root.denominator
            ) * mpmath.sqrt(3)

    def __float__(self):
        return float(self._rat) + float(self._root) * math.sqrt(3.0)

    def to_json(self) -> dict:
        return {"rat": fraction_to_str(self._rat), "root": fraction_to_str(self._root)}

    @classmethod
    def from_json(cls, obj: dict) -> "SqrtThreeNumber":
        return cls(parse_fraction(obj["rat"]), parse_fraction(obj["root"]))

    def __repr__(self):
        return f"SqrtThreeNumber({fraction_to_str(self._rat)}, {fraction_to_str(self._root)})"

    def __str__(self):
        return _render_scalar(self)


def _render_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _render_scalar(v: SqrtThreeNumber) -> str:
    if v.is_zero():
        return "0"
    parts = []
    if v.rat != 0:
        parts.append(_render_fraction(v.rat))
    if v.root != 0:
        parts.append(_render_monomial(v.root, "sqrt(3)"))
    if len(parts) == 1:
        return parts[0]
    second = parts[1]
    if second.startswith("-"):
        return f"{parts[0]} - {second[1:]}"
    return f"{parts[0]} + {second}"


def _render_monomial(c: Fraction, symbol: str) -> str:
    """Render ``c*symbol`` as ``[-][num*]symbol[/den]``."""
    sign = "-" if c < 0 else ""
    num, den = abs(c.numerator), c.denominator
    head = symbol if num == 1 else f"{num}*{symbol}"
    tail = "" if den == 1 else f"/{den}"
    return f"{sign}{head}{tail}"


SQRT3 = SqrtThreeNumber(0, 1)
ZERO = SqrtThreeNumber(0, 0)
ONE = SqrtThreeNumber(1, 0)


def sqrt3_add(a: SqrtThreeNumber, b: SqrtThreeNumber) -> SqrtThreeNumber:
    return SqrtThreeNumber.coerce(a) + b


def sqrt3_mul(a: SqrtThreeNumber, b: SqrtThreeNumber) -> SqrtThreeNumber:
    return SqrtThreeNumber.coerce(a) * b


def sqrt3_div(a: SqrtThreeNumber, b: SqrtThreeNumber) -> SqrtThreeNumber:
    return SqrtThreeNumber.coerce(a) / b


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision for approximate evaluation.

    ``bits`` must leave 64 guard bits above the requested decimal digits.
    """

    bits: int
    target_digits: int

    GUARD_BITS = 64

    def __post_init__(self):
        if self.target_digits < 1:
            raise PrecisionError("target_digits must be positive")
        if self.bits < self.required_bits(self.target_digits):
            raise PrecisionError(
                f"{self.bits} bits cannot guarantee {self.target_digits} digits "
                f"(need at least {self.required_bits(self.target_digits)})"
            )

    @staticmethod
    def required_bits(digits: int) -> int:
        return math.ceil(digits * 3.33) + PrecisionContext.GUARD_BITS

    @classmethod
    def from_digits(cls, digits: int) -> "PrecisionContext":
        return cls(cls.required_bits(digits), digits)

    @property
    def eps(self):
        """Relative accuracy promised by ``target_digits``, as an mpf."""
        with self.working():
            return mpmath.mpf(10) ** (-self.target_digits)

    @contextmanager
    def working(self) -> Iterator[None]:
        with mpmath.workprec(self.bits):
            yield

    def render(self, value) -> str:
        """Decimal string with ``target_digits`` significant digits."""
        with self.working():
            return mpmath.nstr(value, self.target_digits, strip_zeros=False)


Scalar = Union[SqrtThreeNumber, Fraction, int]


class ParityPolynomial:
    """Polynomial over Q(sqrt 3) with only even or only odd powers of x.

    ``coeffs[j]`` is the coefficient of ``x**(2j)`` (even parity) or of
    ``x**(2j-1)`` (odd parity).  For odd parity slot 0 would be ``x**-1`` and
    must therefore be zero; it is kept so that slot indices line up with the
    coefficient names ``r_{k,j}`` etc.
    """

    __slots__ = ("_parity", "_coeffs")

    def __init__(self, parity: str, coeffs: Iterable = ()):
        if parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', not {parity!r}")
        cs = [SqrtThreeNumber.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if parity == "odd" and cs and not cs[0].is_zero():
            raise ValueError("odd-parity slot 0 (the x^-1 term) must be zero")
        object.__setattr__(self, "_parity", parity)
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("ParityPolynomial is immutable")

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, parity: str = "even") -> "ParityPolynomial":
        return cls(parity, ())

    @classmethod
    def constant(cls, c: Scalar) -> "ParityPolynomial":
        return cls("even", [c])

    @classmethod
    def monomial(cls, c: Scalar, power: int) -> "ParityPolynomial":
        if power < 0:
            raise ValueError("negative power")
        if power % 2 == 0:
            return cls("even", [ZERO] * (power // 2) + [c])
        return cls("odd", [ZERO] * ((power + 1) // 2) + [c])

    @classmethod
    def from_dense(cls, dense: Sequence[Scalar]) -> "ParityPolynomial":
        """Build from ``dense[e]`` = coefficient of ``x**e``; rejects mixed parity."""
        items = [(e, SqrtThreeNumber.coerce(c)) for e, c in enumerate(dense)]
        items = [(e, c) for e, c in items if not c.is_zero()]
        if not items:
            return cls.zero()
        parities = {e % 2 for e, _ in items}
        if len(parities) > 1:
            raise ParityError("dense polynomial mixes even and odd powers")
        if parities == {0}:
            slots = [ZERO] * (max(e for e, _ in items) // 2 + 1)
            for e, c in items:
                slots[e // 2] = c
            return cls("even", slots)
        slots = [ZERO] * ((max(e for e, _ in items) + 1) // 2 + 1)
        for e, c in items:
            slots[(e + 1) // 2] = c
        return cls("odd", slots)

    # accessors --------------------------------------------------------
    @property
    def parity(self) -> str:
        return self._parity

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def is_zero(self) -> bool:
        return not self._coeffs

    def exponent(self, j: int) -> int:
        return 2 * j if self._parity == "even" else 2 * j - 1

    @property
    def degree(self) -> int:
        """Degree in x; -1 for the zero polynomial."""
        if not self._coeffs:
            return -1
        return self.exponent(len(self._coeffs) - 1)

    def slot(self, j: int) -> SqrtThreeNumber:
        if j < 0:
            raise IndexError("negative slot")
        return self._coeffs[j] if j < len(self._coeffs) else ZERO

    def coefficient(self, power: int) -> SqrtThreeNumber:
        """Coefficient of ``x**power`` (zero for powers of the other parity)."""
        if power < 0:
            return ZERO
        if (power % 2 == 0) != (self._parity == "even"):
            return ZERO
        j = power // 2 if self._parity == "even" else (power + 1) // 2
        return self.slot(j)

    def dense(self) -> list:
        """List indexed by exponent, length degree+1."""
        out = [ZERO] * (self.degree + 1)
        for j, c in enumerate(self._coeffs):
            e = self.exponent(j)
            if e >= 0:
                out[e] = c
        return out

    def is_constant(self) -> bool:
        return self.degree <= 0

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self._coeffs)

    def is_pure_root(self) -> bool:
        return all(c.is_pure_root() for c in self._coeffs)

    # arithmetic -------------------------------------------------------
    def _combine_parity(self, other: "ParityPolynomial") -> str:
        if self.is_zero():
            return other._parity
        if other.is_zero():
            return self._parity
        if self._parity != other._parity:
            raise ParityError("cannot add polynomials of different parity")
        return self._parity

    def __add__(self, other):
        if not isinstance(other, ParityPolynomial):
            try:
                other = ParityPolynomial.constant(other)
            except TypeError:
                return NotImplemented
        parity = self._combine_parity(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return ParityPolynomial(parity, [self.slot(j) + other.slot(j) for j in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ParityPolynomial(self._parity, [-c for c in self._coeffs])

    def __sub__(self, other):
        if not isinstance(other, ParityPolynomial):
            try:
                other = ParityPolynomial.constant(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "ParityPolynomial":
        c = SqrtThreeNumber.coerce(c)
        return ParityPolynomial(self._parity, [c * v for v in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, ParityPolynomial):
            return self._poly_mul(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def _poly_mul(self, other: "ParityPolynomial") -> "ParityPolynomial":
        parity = "even" if self._parity == other._parity else "odd"
        if self.is_zero() or other.is_zero():
            return ParityPolynomial.zero(parity)
        a, b = self.dense(), other.dense()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b):
                if not cb.is_zero():
                    out[i + j] = out[i + j] + ca * cb
        result = ParityPolynomial.from_dense(out)
        if result.is_zero():
            return ParityPolynomial.zero(parity)
        return result

    def __eq__(self, other):
        if not isinstance(other, ParityPolynomial):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self._parity == other._parity and self._coeffs == other._coeffs

    def __hash__(self):
        if self.is_zero():
            return hash(())
        return hash((self._parity, self._coeffs))

    # evaluation -------------------------------------------------------
    def __call__(self, x, ctx: PrecisionContext | None = None):
        return poly_eval(self, x, ctx)

    # rendering --------------------------------------------------------
    def to_json(self) -> dict:
        return {"parity": self._parity, "coeffs": [c.to_json() for c in self._coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "ParityPolynomial":
        return cls(obj["parity"], [SqrtThreeNumber.from_json(c) for c in obj["coeffs"]])

    def __str__(self):
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coefficient(e)
            if c.is_zero():
                continue
            terms.append(_render_term(c, e))
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        return f"ParityPolynomial({self._parity!r}, [{', '.join(map(repr, self._coeffs))}])"


def _power_symbol(e: int) -> str:
    return "x" if e == 1 else f"x^{e}"


def _render_term(c: SqrtThreeNumber, e: int) -> str:
    if e == 0:
        return _render_scalar(c)
    sym = _power_symbol(e)
    if c.is_rational():
        return _render_monomial(c.rat, sym)
    if c.is_pure_root():
        return _render_monomial(c.root, f"sqrt(3)*{sym}")
    return f"({_render_scalar(c)})*{sym}"


def poly_eval(p: ParityPolynomial, x, ctx: PrecisionContext | None = None):
    """Horner evaluation.

    Exact inputs (int, Fraction, SqrtThreeNumber) give an exact
    SqrtThreeNumber.  Anything else (float, mpf) is evaluated in mpmath at the
    context precision, which is then mandatory.
    """
    if isinstance(x, (int, Fraction, SqrtThreeNumber)) and not isinstance(x, bool):
        xv = SqrtThreeNumber.coerce(x)
        x2 = xv * xv
        if p.parity == "odd":
            # sum_{j>=1} c_j x^(2j-1) = x * sum_{j>=1} c_j x^(2j-2)
            acc = ZERO
            for c in reversed(p.coeffs[1:]):
                acc = acc * x2 + c
            return acc * xv
        acc = ZERO
        for c in reversed(p.coeffs):
            acc = acc * x2 + c
        return acc
    if ctx is None:
        raise PrecisionError("approximate evaluation requires a PrecisionContext")
    with ctx.working():
        xv = mpmath.mpf(x)
        x2 = xv * xv
        acc = mpmath.mpf(0)
        if p.parity == "odd":
            for c in reversed(p.coeffs[1:]):
                acc = acc * x2 + c.to_mpf(ctx)
            return acc * xv
        for c in reversed(p.coeffs):
            acc = acc * x2 + c.to_mpf(ctx)
        return acc
