from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mahlerq.field import (
    ONE,
    SQRT3,
    ParityError,
    ParityPolynomial,
    PrecisionContext,
    SqrtThreeNumber,
    poly_eval,
    sqrt3_add,
    sqrt3_div,
    sqrt3_mul,
)
from mahlerq.recpoly import get_poly

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**6)
numbers = st.builds(SqrtThreeNumber, fractions, fractions)
nonzero = numbers.filter(lambda x: not x.is_zero())


def test_norm_of_one_plus_root3():
    assert sqrt3_mul(SqrtThreeNumber(1, 1), SqrtThreeNumber(1, -1)) == SqrtThreeNumber(-2, 0)


def test_root_over_root():
    assert sqrt3_div(SqrtThreeNumber(0, F(2, 3)), SqrtThreeNumber(0, 1)) == SqrtThreeNumber(F(2, 3), 0)


def test_b10_rationalization():
    assert SqrtThreeNumber(0, F(2, 3)) * SQRT3 == SqrtThreeNumber(2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        sqrt3_div(ONE, SqrtThreeNumber(0, 0))


def test_add_and_predicates():
    x = sqrt3_add(SqrtThreeNumber(F(1, 2)), SqrtThreeNumber(0, 3))
    assert x == SqrtThreeNumber(F(1, 2), 3)
    assert SqrtThreeNumber(5).is_rational() and not SqrtThreeNumber(5).is_pure_root()
    assert SqrtThreeNumber(0, 2).is_pure_root()


def test_json_round_trip_and_format():
    x = SqrtThreeNumber(F(-3, 4), 2)
    assert x.to_json() == {"rat": "-3/4", "root": "2/1"}
    assert SqrtThreeNumber.from_json(x.to_json()) == x


@settings(max_examples=200, deadline=None)
@given(numbers, numbers, numbers)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a


@settings(max_examples=200, deadline=None)
@given(numbers, nonzero)
def test_division_round_trip(a, b):
    assert a * b / b == a
    assert b * b.inverse() == ONE


@settings(max_examples=100, deadline=None)
@given(numbers)
def test_float_conversion(a):
    assert float(a) == pytest.approx(float(a.rat) + float(a.root) * 3**0.5, rel=1e-12, abs=1e-9)


def test_precision_context_bits():
    ctx = PrecisionContext.from_digits(30)
    assert ctx.bits >= -(-30 * 333 // 100) + 64
    with pytest.raises(ValueError):
        PrecisionContext(64, 30)


def test_eval_examples():
    assert poly_eval(get_poly("R", 1), F(0)) == F(-5, 4)
    assert poly_eval(get_poly("Q", 0), F(17, 3)) == 2
    assert poly_eval(get_poly("Y", 1), 3) == F(-9, 2)


def test_eval_at_field_element():
    # R_1 = x^2/2 - 5/4 at sqrt3 is 3/2 - 5/4
    assert poly_eval(get_poly("R", 1), SQRT3) == SqrtThreeNumber(F(1, 4))


def test_parity_enforced():
    even = ParityPolynomial.from_dense([1, 0, 2])
    odd = ParityPolynomial.from_dense([0, 3])
    with pytest.raises(ParityError):
        even + odd
    with pytest.raises(ParityError):
        ParityPolynomial.from_dense([1, 1])
    assert (even + even).parity == "even"
    assert odd.scale(F(1, 3)).parity == "odd"
    assert (even * odd).parity == "odd"


def test_zero_polynomial_joins_either_parity():
    z = ParityPolynomial.zero()
    odd = ParityPolynomial.from_dense([0, 3])
    assert z + odd == odd


def test_str_descending():
    assert str(get_poly("R", 1)) == "x^2/2 - 5/4"
    assert str(get_poly("S", 1)) == "-x/2"


@settings(max_examples=50, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=6), fractions)
def test_approximate_eval_matches_exact(slots, x):
    poly = ParityPolynomial("even", slots)
    # 256 bits carry about 77 decimal digits; the guard-bit rule only
    # promises 57 of them, but the exact comparison below asks for 70.
    ctx = PrecisionContext(256, 57)
    exact = poly_eval(poly, x)
    with ctx.working():
        approx = poly_eval(poly, mpmath.mpf(x.numerator) / x.denominator, ctx)
        exact_mpf = SqrtThreeNumber.coerce(exact).to_mpf(ctx)
        assert abs(approx - exact_mpf) <= mpmath.mpf(10) ** -70 * max(1, abs(exact_mpf))
