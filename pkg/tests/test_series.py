import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfadm import OrderMismatchError, SingularDivisionError, TruncatedSeries
from gfadm.series import series_add, series_div, series_mul, series_pow_int


def ts(*coeffs):
    return TruncatedSeries(list(coeffs))


class TestAdd:
    def test_coefficientwise(self):
        assert series_add(ts(1, 2), ts(3, 4)) == ts(4, 6)

    def test_additive_identity(self):
        assert series_add(ts(1, 0, 0), ts(0, 0, 0)) == ts(1, 0, 0)

    def test_additive_inverse(self):
        assert series_add(ts(0.5, -0.5), ts(-0.5, 0.5)) == ts(0, 0)

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            series_add(ts(1, 2), ts(1, 2, 3))


class TestMul:
    def test_square_binomial(self):
        assert series_mul(ts(1, 1, 0), ts(1, 1, 0)) == ts(1, 2, 1)

    def test_annihilator(self):
        assert series_mul(ts(1, 2, 3), ts(0, 0, 0)) == ts(0, 0, 0)

    def test_scalar_scaling(self):
        assert series_mul(ts(2, 0, 0), ts(1, 1, 1)) == ts(2, 2, 2)

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            series_mul(ts(1), ts(1, 2))


class TestDiv:
    def test_geometric_series(self):
        q = series_div(ts(1, 0, 0, 0), ts(1, 1, 0, 0))
        assert np.allclose(q.coeffs, [1, -1, 1, -1], atol=1e-14)

    def test_exact_factor(self):
        q = series_div(ts(1, 2, 1), ts(1, 1, 0))
        assert np.allclose(q.coeffs, [1, 1, 0], atol=1e-14)

    def test_zero_constant_term(self):
        with pytest.raises(SingularDivisionError):
            series_div(ts(1, 0), ts(0, 1))


class TestPow:
    def test_square(self):
        assert series_pow_int(ts(1, 1, 0), 2) == ts(1, 2, 1)

    def test_empty_product(self):
        assert series_pow_int(ts(3, 0, 0), 0) == ts(1, 0, 0)

    def test_lambda_cubed(self):
        assert series_pow_int(ts(0, 1, 0, 0), 3) == ts(0, 0, 0, 1)

    def test_negative_exponent_rejected(self):
        with pytest.raises(OrderMismatchError):
            series_pow_int(ts(1, 1), -1)


coeff = st.floats(min_value=-10, max_value=10, allow_nan=False)
triples = st.tuples(
    st.lists(coeff, min_size=4, max_size=4),
    st.lists(coeff, min_size=4, max_size=4),
    st.lists(coeff, min_size=4, max_size=4),
)


def _close(a, b, rtol=1e-12):
    scale = max(1.0, float(np.max(np.abs(a.coeffs))), float(np.max(np.abs(b.coeffs))))
    return bool(np.all(np.abs(a.coeffs - b.coeffs) <= rtol * scale))


@settings(max_examples=200, deadline=None)
@given(triples)
def test_ring_axioms(abc):
    a, b, c = (ts(*v) for v in abc)
    assert _close(a + b, b + a)
    assert _close(a * b, b * a)
    assert _close((a + b) + c, a + (b + c))
    assert _close((a * b) * c, a * (b * c))
    assert _close(a * (b + c), a * b + a * c)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(coeff, min_size=5, max_size=5),
    st.lists(coeff, min_size=5, max_size=5).filter(lambda v: abs(v[0]) >= 0.1),
)
def test_div_mul_roundtrip(av, bv):
    a, b = ts(*av), ts(*bv)
    q = a / b
    assert np.all(np.abs((q * b).coeffs - a.coeffs) <= 1e-10)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(coeff, min_size=6, max_size=6),
    st.lists(coeff, min_size=6, max_size=6),
    st.integers(min_value=1, max_value=4),
)
def test_truncation_consistency(av, bv, m):
    full = (ts(*av) * ts(*bv)).coeffs[: m + 1]
    short = (ts(*av[: m + 1]) * ts(*bv[: m + 1])).coeffs
    assert np.allclose(full, short, rtol=0, atol=1e-12)


def test_constant_constructor():
    s = TruncatedSeries.constant(2.5, 3)
    assert s.order == 3
    assert s == ts(2.5, 0, 0, 0)
