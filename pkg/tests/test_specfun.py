"""Special functions against independently computed reference values.

Reference constants were generated with an arbitrary-precision library
(series/quadrature definitions evaluated at 40 digits) and frozen here.
"""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polyginibre import specfun
from polyginibre.exceptions import InvalidParameters, NonConvergent
from polyginibre.specfun import (PFqSpec, bessel_i, laguerre,
                                 lower_incomplete_gamma, pfq, pfq_rational,
                                 pfq_value, regularized_lower_gamma)


class TestLaguerre:
    def test_reference_values(self):
        assert laguerre(5, 0, 2.5) == pytest.approx(1.032552083333333333333,
                                                    rel=1e-14)
        assert laguerre(4, 3, 1.75) == pytest.approx(0.04443359375, rel=1e-13)

    def test_low_orders_exact(self):
        # L_0 = 1, L_1^(a)(x) = 1 + a - x
        assert laguerre(0, 0, 3.7) == 1.0
        assert laguerre(1, 2, 0.5) == 2.5

    def test_value_at_zero_is_binomial(self):
        assert laguerre(4, 2, 0.0) == pytest.approx(math.comb(6, 4), rel=1e-14)

    def test_array_evaluation(self):
        x = np.linspace(0.0, 10.0, 11)
        vals = laguerre(3, 1, x)
        assert vals.shape == x.shape
        assert vals[0] == pytest.approx(math.comb(4, 3), rel=1e-14)

    @given(st.integers(1, 10), st.integers(0, 6),
           st.floats(0.0, 40.0, allow_nan=False))
    def test_three_term_recurrence(self, n, alpha, x):
        # (n+1) L_{n+1} = (2n+1+a-x) L_n - (n+a) L_{n-1}
        lhs = (n + 1) * laguerre(n + 1, alpha, x)
        rhs = ((2 * n + 1 + alpha - x) * laguerre(n, alpha, x)
               - (n + alpha) * laguerre(n - 1, alpha, x))
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-8)

    def test_rejects_bad_degree(self):
        with pytest.raises(ValueError):
            laguerre(-1, 0, 1.0)
        with pytest.raises(ValueError):
            laguerre(2, -1, 1.0)


class TestIncompleteGamma:
    def test_reference_values(self):
        assert regularized_lower_gamma(3.0, 2.5) == pytest.approx(
            0.4561868841166704820019, rel=1e-13)
        assert regularized_lower_gamma(0.5, 0.25) == pytest.approx(
            0.5204998778130465376827, rel=1e-13)
        assert regularized_lower_gamma(30.0, 25.0) == pytest.approx(
            0.1821039159774551098024, rel=1e-13)

    def test_unregularized(self):
        # gamma(1, x) = 1 - e^-x
        assert lower_incomplete_gamma(1.0, 2.0) == pytest.approx(
            1.0 - math.exp(-2.0), rel=1e-14)

    @given(st.floats(0.1, 50.0), st.floats(0.0, 80.0))
    def test_bounds_and_monotonicity(self, a, x):
        p = regularized_lower_gamma(a, x)
        assert 0.0 <= p <= 1.0
        assert regularized_lower_gamma(a, x + 1.0) >= p

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            lower_incomplete_gamma(0.0, 1.0)
        with pytest.raises(ValueError):
            lower_incomplete_gamma(1.0, -1.0)


class TestPFq:
    def test_reference_values(self):
        assert pfq_value((1.0, 1.5), (3.0, 2.0), -4.0) == pytest.approx(
            0.4762223881973913013081, rel=1e-13)
        assert pfq_value((1.0, 1.5), (3.0, 2.0), -16.0) == pytest.approx(
            0.1806064312126128777456, rel=1e-13)

    def test_exponential_special_case(self):
        # 0F0(z) = e^z
        assert pfq_value((), (), 1.5) == pytest.approx(math.exp(1.5),
                                                       rel=1e-14)

    def test_terminating_series(self):
        # 1F1(-2; 1; x) = L_2(x)
        for x in (0.3, 2.0, 7.5):
            assert pfq_value((-2.0,), (1.0,), x) == pytest.approx(
                laguerre(2, 0, x), rel=1e-13)

    def test_strong_cancellation_goes_exact(self):
        res = pfq(PFqSpec((1.0, 1.5), (3.0, 2.0), -144.0))
        assert res.exact
        assert res.cancellation_digits > 10.0
        # value also pinned by the closed-form variance at R = 6
        assert res.value == pytest.approx(
            (1.0 - 3.3792450869197252 / 36.0) / 36.0, rel=1e-12)

    def test_rational_matches_float_path(self):
        f = pfq_value((1.0, 1.5), (3.0, 2.0), -2.0)
        frac, _, _ = pfq_rational((1.0, 1.5), (3.0, 2.0), -2.0)
        assert float(frac) == pytest.approx(f, rel=1e-13)

    def test_denominator_pole_rejected(self):
        with pytest.raises(InvalidParameters):
            PFqSpec((1.0,), (-2.0,), 0.5)

    def test_pole_after_termination_allowed(self):
        # series stops at k = 1 before the denominator pole at k = 3
        val = pfq_value((-1.0,), (-3.0,), 1.0)
        assert val == pytest.approx(1.0 + 1.0 / 3.0, rel=1e-14)

    def test_budget_exhaustion(self):
        with pytest.raises(NonConvergent):
            pfq(PFqSpec((1.0,), (), 1.0), max_terms=50)


class TestBesselI:
    def test_reference_values(self):
        assert bessel_i(0, 2.0, scaled=True) == pytest.approx(
            0.3085083225536710395334, rel=1e-13)
        assert bessel_i(1, 2.0, scaled=True) == pytest.approx(
            0.2152692892489376591585, rel=1e-13)
        assert bessel_i(0, 50.0, scaled=True) == pytest.approx(
            0.05656162664745419252994, rel=1e-12)
        assert bessel_i(1, 50.0, scaled=True) == pytest.approx(
            0.05599312389289539964388, rel=1e-12)

    def test_small_argument_limits(self):
        assert bessel_i(0, 0.0) == 1.0
        assert bessel_i(1, 0.0) == 0.0

    @given(st.floats(-60.0, 60.0))
    def test_parity(self, x):
        assert bessel_i(0, -x, scaled=True) == pytest.approx(
            bessel_i(0, x, scaled=True), rel=1e-13)
        assert bessel_i(1, -x, scaled=True) == pytest.approx(
            -bessel_i(1, x, scaled=True), rel=1e-13, abs=1e-16)

    def test_overflow_guard(self):
        with pytest.raises(OverflowError):
            bessel_i(0, 800.0)
        assert bessel_i(0, 800.0, scaled=True) > 0.0

    def test_unsupported_order(self):
        with pytest.raises(ValueError):
            bessel_i(2, 1.0)


def test_reciprocal_factorial_negative_is_zero():
    assert specfun.reciprocal_factorial(-1) == 0.0
    assert specfun.reciprocal_factorial(3) == pytest.approx(1.0 / 6.0,
                                                            rel=1e-15)
