"""Acceptance gate: nine end-to-end criteria, one printed verdict each.

Each test exercises the public API exactly as a release check would and
prints a single ``criterion N ...: PASS``/``FAIL`` line so the gate can be
read off a verbose run at a glance.
"""

import math
import time

import numpy as np
import pytest

from polyginibre import cli, sampler, spectra, statistics, validate
from polyginibre._backend import bessel_i0e, bessel_i1e, gammainc_lower_reg

GRID_M = (0, 1, 2, 3, 4)
GRID_R = (0.5, 1.0, 2.0, 4.0)


def _verdict(num, label, ok):
    print(f"criterion {num} ({label}): {'PASS' if ok else 'FAIL'}")
    assert ok


def test_criterion_1_mean_identity():
    ok = True
    for m in GRID_M:
        for R in GRID_R:
            t0 = time.perf_counter()
            mu = statistics.mean_count(m, R)
            elapsed = time.perf_counter() - t0
            ok &= abs(mu - R * R) <= 1e-8 and elapsed < 1.0
    _verdict(1, "mean identity", ok)


def test_criterion_2_four_route_agreement():
    t0 = time.perf_counter()
    ok = True
    for m in GRID_M:
        for R in GRID_R:
            rep = statistics.variance_report(m, R)
            ok &= rep.max_pairwise_discrepancy <= 1e-6
            ok &= "closed_form" in rep.route_values
    ok &= time.perf_counter() - t0 < 60.0
    _verdict(2, "four-route variance agreement", ok)


def test_criterion_3_bessel_closed_form():
    v = statistics.variance_closed_form(0, 1.0)
    oracle = bessel_i0e(2.0) + bessel_i1e(2.0)  # R^2 e^{-2R^2}(I0+I1), R = 1
    ok = abs(v - oracle) <= 1e-6
    for R in (0.5, 1.0, 2.0, 4.0, 6.0):
        closed = statistics.variance_closed_form(0, R)
        bessel = statistics.variance_bessel_m0(R)
        ok &= abs(closed - bessel) <= 1e-10 * bessel
    _verdict(3, "m=0 Bessel closed form", ok)


def test_criterion_4_asymptotic_slope():
    ok = True
    for m in (0, 1, 2, 3):
        slope = statistics.variance_quadrature_38(m, 40.0) / 40.0
        cm = statistics.asymptotic_constant(m)
        ok &= abs(slope - cm) <= 0.02 * cm
    ok &= abs(statistics.asymptotic_constant(0)
              - 1.0 / math.sqrt(math.pi)) <= 1e-12
    ratio = statistics.asymptotic_constant(64) / (
        8.0 * math.sqrt(64.0) / math.pi ** 2)
    ok &= abs(ratio - 1.0) <= 0.10
    _verdict(4, "asymptotic slope", ok)


def test_criterion_5_ground_level_reduction():
    ok = True
    for R in (1.0, 2.0):
        for k in range(31):
            b = spectra.beta_eigenvalue(0, k, R)
            ref = gammainc_lower_reg(k + 1.0, R * R)
            ok &= abs(b - ref) <= 1e-12 * max(ref, 1e-300)
    _verdict(5, "ground-level reduction", ok)


def test_criterion_6_identity_suites():
    t0 = time.perf_counter()
    result = validate.check_identity_suites()
    elapsed = time.perf_counter() - t0
    ok = result.passed and elapsed < 10.0
    _verdict(6, "identity property suites", ok)


def test_criterion_7_eigenvalue_oracles():
    ok = True
    for m in range(5):
        for k in range(13):
            for R in GRID_R:
                closed = spectra.beta_eigenvalue(m, k, R)
                oracle = spectra.beta_eigenvalue_quadrature(m, k, R)
                ok &= abs(closed - oracle) <= 1e-9
    for m in range(5):
        for R in GRID_R:
            lam = spectra.lambda_eigenvalue_quadrature(m, m, R)
            var = statistics.variance_quadrature_38(m, R)
            ok &= abs(lam / math.pi - var) <= 1e-8 * var
    _verdict(7, "eigenvalue oracles", ok)


def test_criterion_8_monte_carlo():
    t0 = time.perf_counter()
    s = sampler.sample_counts(1, 2.0, 100000, seed=20240817)
    mean, var, se_mean, se_var = sampler.estimate_cumulants(s)
    ok = abs(mean - 4.0) <= 4.0 * se_mean
    oracle = statistics.variance_quadrature_38(1, 2.0)
    ok &= abs(var - oracle) <= 4.0 * se_var
    pmf = sampler.exact_count_pmf(1, 2.0)
    hist = np.bincount(np.asarray(s.counts), minlength=pmf.size)
    emp = hist / hist.sum()
    n = max(emp.size, pmf.size)
    emp = np.pad(emp, (0, n - emp.size))
    pmf = np.pad(pmf, (0, n - pmf.size))
    ok &= 0.5 * float(np.abs(emp - pmf).sum()) < 0.01
    ok &= time.perf_counter() - t0 < 30.0
    _verdict(8, "Monte Carlo replication", ok)


def test_criterion_9_validation_report(capsys):
    report = validate.run_all()
    expected = {"incomplete-gamma order",
                "variance linearization upper limit",
                "asymptotic series terminating parameter",
                "area-weight operator calibration"}
    ok = report.passed
    ok &= expected == set(report.resolved_questions)
    ok &= all(report.resolved_questions[k] for k in expected)
    status = cli.main(["validate"])
    capsys.readouterr()
    ok &= status == 0
    _verdict(9, "validation report", ok)
