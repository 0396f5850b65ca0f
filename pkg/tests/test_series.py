from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mahlerq.field import SQRT3, ParityPolynomial, SqrtThreeNumber
from mahlerq.series import (
    DELTA,
    THETA,
    ConsistencyError,
    LaurentSeries,
    TruncationOrderError,
    UnsupportedPhaseError,
    am_expl,
    bernoulli,
    bm_expl,
    extract_family,
    mu,
    mu_partition,
    mu_reciprocal,
    relation_check,
    trig_series,
)
from mahlerq.tables import PRINTED_POLYS, printed_poly


def test_bernoulli():
    assert bernoulli(0) == 1
    assert bernoulli(1) == F(-1, 2)
    assert bernoulli(2) == F(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == F(-691, 2730)


def test_mu_values():
    assert mu(0) == SqrtThreeNumber(0, F(-2, 3))
    assert mu(1) == SqrtThreeNumber(F(-1, 3))
    assert mu(2) == SqrtThreeNumber(0, F(-5, 18))


def test_mu_two_methods_agree():
    for n in range(0, 15):
        assert mu_partition(n) == mu_reciprocal(n)


def test_csc_half():
    s = trig_series("csc", F(1, 2), 0, 4)
    assert s.valuation == -1
    assert s.coeff(-1) == ParityPolynomial.constant(2)
    assert s.coeff(0).is_zero()
    assert s.coeff(1) == ParityPolynomial.constant(F(1, 12))


def test_sinh_x():
    s = trig_series("sinh", "x", 0, 5)
    assert s.coeff(1) == ParityPolynomial.from_dense([0, 1])
    assert s.coeff(3) == ParityPolynomial.from_dense([0, 0, 0, F(1, 6)])


def test_cos_shifted_constant_term():
    s = trig_series("cos", F(1, 2), THETA, 3)
    assert s.coeff(0) == ParityPolynomial.constant(F(-1, 2))


def test_exact_phase_values():
    s = trig_series("sin", 1, THETA, 0)
    assert s.coeff(0) == ParityPolynomial.constant(SQRT3 / 2)


def test_unsupported_phase():
    with pytest.raises(UnsupportedPhaseError):
        trig_series("sin", 1, F(1, 5), 3)


def test_truncation_error():
    s = trig_series("sin", 1, 0, 3)
    with pytest.raises(TruncationOrderError):
        s.coeff(4)


def _series(draw_coeffs, valuation):
    order = valuation + len(draw_coeffs) - 1
    return LaurentSeries.from_scalars(valuation, order, draw_coeffs)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.builds(F, st.integers(-99, 99), st.integers(1, 9)), min_size=2, max_size=8),
    st.builds(F, st.integers(1, 99) | st.integers(-99, -1), st.integers(1, 9)),
    st.integers(min_value=-1, max_value=1),
)
def test_reciprocal_property(tail, lead, v):
    s = _series([lead] + tail, v)
    r = s.reciprocal()
    prod = s * r
    assert prod.coeff(0) == ParityPolynomial.constant(1)
    for m in range(1, prod.order + 1):
        assert prod.coeff(m).is_zero()


@pytest.mark.parametrize("key", [k for k in PRINTED_POLYS if k[0] in "AB"])
def test_printed_ab(key):
    assert extract_family(*key) == printed_poly(*key)


def test_d1_shape():
    d1 = extract_family("D", 1)
    assert d1.parity == "even" and d1.degree == 2


def test_convolution_matches_series():
    for m in range(0, 13):
        assert am_expl(m) == extract_family("A", m)
        assert bm_expl(m) == extract_family("B", m)


@pytest.mark.parametrize("name", list("ABCDEFGKLUVWNO"))
def test_coefficients_in_q_or_root3_q(name):
    for m in range(0, 13):
        for c in extract_family(name, m).coeffs:
            assert c.is_rational() or c.is_pure_root()


def test_relation_examples():
    from mahlerq.recpoly import get_poly

    assert get_poly("S", 2) == extract_family("B", 2).scale(F(3, 4))
    assert (get_poly("R", 2) + extract_family("A", 2).scale(SQRT3 / 4)).is_zero()
    assert (get_poly("R", 0) + extract_family("A", 0).scale(SQRT3 / 4)).is_zero()


def test_relation_check_passes():
    for n in range(0, 7):
        rep = relation_check(n)
        assert rep.ok, rep.failures()


def test_angles():
    assert 3 * THETA == 2 and 6 * DELTA == 2


def test_consistency_error_is_arithmetic():
    assert issubclass(ConsistencyError, ArithmeticError)
