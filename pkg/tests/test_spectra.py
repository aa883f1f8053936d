"""Concentration-operator spectra: closed forms against quadrature oracles.

Frozen reference values come from 40-digit arbitrary-precision quadrature
of the defining integrals.
"""

import csv
import io
import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from polyginibre import spectra
from polyginibre.exceptions import BudgetExceeded
from polyginibre.spectra import (EigenvalueTable, beta_coefficients,
                                 beta_eigenvalue, beta_eigenvalue_quadrature,
                                 build_eigenvalue_table,
                                 feldheim_linearization,
                                 lambda_calibration_constant,
                                 lambda_closed_form,
                                 lambda_eigenvalue_quadrature)
from polyginibre.specfun import regularized_lower_gamma


class TestBetaCoefficients:
    def test_diagonal_reference(self):
        # (L_1^(0))^2 = (1 - x)^2 = 1 - 2x + x^2
        assert beta_coefficients(1, 1) == pytest.approx([1.0, -2.0, 1.0])

    def test_ground_level_is_trivial(self):
        # single gamma-weight 1/k!, reproducing gamma(k+1, R^2)/k!
        assert beta_coefficients(0, 7) == pytest.approx(
            [1.0 / math.factorial(7)])

    @given(st.integers(0, 8), st.integers(0, 8))
    def test_symmetric_in_indices(self, m, k):
        assert beta_coefficients(m, k) == pytest.approx(
            beta_coefficients(k, m), rel=1e-12)

    @given(st.integers(0, 6), st.integers(0, 6))
    def test_count_and_leading_coefficient(self, m, k):
        c = beta_coefficients(m, k)
        assert len(c) == 2 * min(m, k) + 1
        # constant term: m! k! / ((m^k)!^2 |m-k|!^2)
        lead = (math.factorial(m) * math.factorial(k)
                / math.factorial(min(m, k)) ** 2
                / math.factorial(abs(m - k)) ** 2)
        assert c[0] == pytest.approx(lead, rel=1e-11)


class TestBetaEigenvalue:
    def test_reference_values(self):
        assert beta_eigenvalue(1, 1, 1.0) == pytest.approx(
            0.264241117657115356809, rel=1e-12)
        assert beta_eigenvalue(2, 3, 1.5) == pytest.approx(
            0.2593491502528952134689, rel=1e-12)
        assert beta_eigenvalue(0, 2, 2.0) == pytest.approx(
            0.7618966944464556561817, rel=1e-12)

    def test_ground_level_reduces_to_incomplete_gamma(self):
        for k in (0, 3, 11):
            assert beta_eigenvalue(0, k, 1.3) == pytest.approx(
                regularized_lower_gamma(k + 1.0, 1.3 ** 2), rel=1e-12)

    @given(st.integers(0, 9), st.integers(0, 9),
           st.floats(0.3, 4.0, allow_nan=False))
    def test_matches_quadrature_oracle(self, m, k, R):
        assert beta_eigenvalue(m, k, R) == pytest.approx(
            beta_eigenvalue_quadrature(m, k, R), abs=2e-10)

    @given(st.integers(0, 9), st.integers(0, 9),
           st.floats(0.3, 4.0, allow_nan=False))
    def test_index_symmetry(self, m, k, R):
        assert beta_eigenvalue(m, k, R) == pytest.approx(
            beta_eigenvalue(k, m, R), rel=1e-11)

    @given(st.integers(0, 5), st.integers(0, 14))
    def test_open_unit_interval(self, m, k):
        assert 0.0 < beta_eigenvalue(m, k, 2.0) < 1.0


class TestFeldheimLinearization:
    def test_reference_coefficients(self):
        # (L_1^(1)(x))^2 = (2 - x)^2 -> 4 L_0 - 4 L_1^(2) + 2 L_2^(2)
        assert feldheim_linearization(1, 1) == pytest.approx([4.0, -4.0, 2.0])
        assert feldheim_linearization(2, 0) == pytest.approx(
            [1.0, -4.0, 10.0, -12.0, 6.0])

    @given(st.integers(0, 6), st.integers(0, 4))
    def test_total_mass(self, m, alpha):
        # at x = 0: (C(m+alpha, m))^2 = sum_s C_s C(s+2alpha, s)
        cs = feldheim_linearization(m, alpha)
        total = sum(c * math.comb(s + 2 * alpha, s)
                    for s, c in enumerate(cs))
        assert total == pytest.approx(math.comb(m + alpha, m) ** 2, rel=1e-12)


class TestLambdaEigenvalues:
    def test_reference_values(self):
        assert lambda_eigenvalue_quadrature(0, 0, 1.0) == pytest.approx(
            1.645495897353882067944, rel=1e-10)
        assert lambda_eigenvalue_quadrature(1, 2, 1.5) == pytest.approx(
            4.859752906292766951826, rel=1e-10)

    def test_closed_form_matches_quadrature(self):
        for m, k, R in ((0, 0, 1.0), (1, 2, 1.5), (2, 2, 2.0), (0, 3, 1.0),
                        (4, 4, 4.0)):
            assert lambda_closed_form(m, k, R) == pytest.approx(
                lambda_eigenvalue_quadrature(m, k, R), rel=1e-8)

    def test_calibration_constant_is_unity(self):
        assert lambda_calibration_constant() == pytest.approx(1.0, abs=1e-9)

    def test_closed_form_requires_upper_index(self):
        with pytest.raises(ValueError):
            lambda_closed_form(3, 1, 1.0)

    @settings(max_examples=15)
    @given(st.integers(0, 3), st.floats(0.5, 3.0, allow_nan=False))
    def test_variance_bookkeeping(self, m, R):
        # the m-th eigenvalue over pi is the count variance
        from polyginibre import statistics
        lam = lambda_eigenvalue_quadrature(m, m, R)
        assert lam / math.pi == pytest.approx(
            statistics.variance_quadrature_38(m, R), rel=1e-8)


class TestEigenvalueTable:
    def test_sums_to_squared_radius(self):
        t = build_eigenvalue_table(1, 2.0, tol=1e-10)
        assert sum(t.values) == pytest.approx(4.0, abs=2e-10)
        assert t.tail_bound <= 1e-10

    def test_budget_exceeded(self):
        with pytest.raises(BudgetExceeded):
            build_eigenvalue_table(0, 3.0, tol=1e-10, kmax=4)

    def test_verify_mode(self):
        t = build_eigenvalue_table(2, 1.0, tol=1e-6, verify=True)
        assert all(m == "closed_form" for m in t.methods)

    def test_rejects_invalid_entries(self):
        with pytest.raises(ValueError):
            EigenvalueTable(m=0, R=1.0, values=(0.5, 1.5), tail_bound=0.0)
        with pytest.raises(ValueError):
            EigenvalueTable(m=0, R=1.0, values=(0.5,), tail_bound=-1.0)

    def test_csv_round_trip(self):
        t = build_eigenvalue_table(1, 1.0, tol=1e-8)
        rows = list(csv.DictReader(io.StringIO(t.to_csv())))
        assert [int(r["k"]) for r in rows] == list(range(len(t.values)))
        for r, b in zip(rows, t.values):
            assert float(r["beta"]) == b  # 17 significant digits round-trip
        assert float(rows[-1]["residual"]) == pytest.approx(t.tail_bound,
                                                            abs=1e-15)

    def test_json_schema(self):
        t = build_eigenvalue_table(0, 1.0, tol=1e-6)
        doc = json.loads(t.to_json())
        assert doc["m"] == 0 and doc["R"] == 1.0
        assert {"k", "beta", "method", "residual"} <= set(doc["values"][0])
