"""Self-validation: the acceptance checks behind the `validate` command.

Each criterion is a function returning a CheckResult; `run_all` executes the
full battery and also documents how the formula-level ambiguities in the
source material were resolved, with the measured evidence for each.
"""

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import sampler, spectra, statistics
from .exceptions import AccuracyLoss
from .specfun import laguerre, pfq_value, regularized_lower_gamma

__all__ = ["CheckResult", "ValidationReport", "run_all"]

_GRID_M = (0, 1, 2, 3, 4)
_GRID_R = (0.5, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple
    resolved_questions: dict

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_text(self):
        lines = []
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
        lines.append("")
        lines.append("resolved formula ambiguities:")
        for k, v in self.resolved_questions.items():
            lines.append(f"  {k}: {v}")
        lines.append("")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def to_json(self):
        return json.dumps({
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                       for c in self.checks],
            "resolved_questions": self.resolved_questions,
            "passed": self.passed,
        })


def check_mean_identity():
    """Mean equals R^2 within 1e-8 on the full grid, each run under 1 s."""
    worst = 0.0
    slowest = 0.0
    for m in _GRID_M:
        for R in _GRID_R:
            t0 = time.perf_counter()
            mu = statistics.mean_count(m, R, tol=1e-8)
            slowest = max(slowest, time.perf_counter() - t0)
            worst = max(worst, abs(mu - R * R))
    ok = worst <= 1e-8 and slowest < 1.0
    return CheckResult(
        "mean identity", ok,
        f"max |mean - R^2| = {worst:.3g} (<= 1e-8), "
        f"slowest run {slowest:.2f}s (< 1s)")


def check_route_agreement():
    """All unflagged variance routes agree pairwise within 1e-6 relative."""
    t0 = time.perf_counter()
    worst = 0.0
    flagged = []
    for m in _GRID_M:
        for R in _GRID_R:
            rep = statistics.variance_report(m, R)
            worst = max(worst, rep.max_pairwise_discrepancy)
            if any("AccuracyLoss" in n for n in rep.notes):
                flagged.append((m, R))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 60.0 and not flagged
    return CheckResult(
        "four-route variance agreement", ok,
        f"max pairwise relative discrepancy {worst:.3g} (<= 1e-6), "
        f"{elapsed:.1f}s (< 60s), flagged routes: {flagged or 'none'}")


def check_bessel_identity():
    """m = 0: value at R = 1 and closed-form/Bessel identity to 1e-10."""
    v = statistics.variance_report(0, 1.0).route_values["quadrature_38"]
    ref = statistics.variance_bessel_m0(1.0)
    ok_value = abs(v - ref) <= 1e-6
    worst = 0.0
    for R in (0.5, 1.0, 2.0, 4.0, 6.0):
        cf = statistics.variance_closed_form(0, R)
        be = statistics.variance_bessel_m0(R)
        worst = max(worst, abs(cf - be) / be)
    ok = ok_value and worst <= 1e-10
    return CheckResult(
        "m=0 Bessel closed form", ok,
        f"variance(0,1) = {v:.9f} vs {ref:.9f}; closed-form/Bessel "
        f"identity max rel gap {worst:.3g} (<= 1e-10 for R <= 6)")


def check_asymptotic_slope():
    """Large-R slope matches the asymptotic constant."""
    worst = 0.0
    for m in (0, 1, 2, 3):
        slope = statistics.variance_quadrature_38(m, 40.0) / 40.0
        cm = statistics.asymptotic_constant(m)
        worst = max(worst, abs(slope - cm) / cm)
    c0_err = abs(statistics.asymptotic_constant(0) - 1.0 / math.sqrt(math.pi))
    c64 = statistics.asymptotic_constant(64)
    ratio = c64 / (8.0 * math.sqrt(64.0) / math.pi ** 2)
    ok = worst <= 0.02 and c0_err <= 1e-12 and abs(ratio - 1.0) <= 0.10
    return CheckResult(
        "asymptotic slope", ok,
        f"max slope error {worst:.2%} (<= 2%), |C_0 - 1/sqrt(pi)| = "
        f"{c0_err:.2g}, C_64 / (8 sqrt(64)/pi^2) = {ratio:.4f} (within 10%)")


def check_first_level_reduction():
    """At m = 0 the Bernoulli parameters are regularized incomplete gammas."""
    worst = 0.0
    for R in (1.0, 2.0):
        for k in range(31):
            b = spectra.beta_eigenvalue(0, k, R)
            ref = regularized_lower_gamma(k + 1.0, R * R)
            worst = max(worst, abs(b - ref) / ref)
    ok = worst <= 1e-12
    return CheckResult(
        "first-level incomplete-gamma reduction", ok,
        f"max rel error {worst:.3g} (<= 1e-12, k <= 30, R in {{1, 2}})")


def _comb0(n, k):
    # binomial extended by zero outside 0 <= k <= n
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _laguerre_exact(n, al, x):
    # explicit series with an exact rational argument; reference value for
    # the alternating identity sums, immune to their cancellation
    return sum((-1 if i % 2 else 1) * Fraction(math.comb(n + al, n - i),
                                               math.factorial(i)) * x ** i
               for i in range(n + 1))


def _identity_product(rng):
    q, p = int(rng.integers(0, 6)), int(rng.integers(0, 6))
    al = int(rng.integers(0, 5))
    x = float(rng.uniform(0.05, 8.0))
    lhs = laguerre(q, al, x) * laguerre(p, al, x)
    xf = Fraction(x)
    rhs = Fraction(0)
    for j in range(q + p + 1):
        aj = sum(math.comb(j, ell) * _comb0(q + al, q - j + ell)
                 * _comb0(p + al, p - ell) for ell in range(j + 1))
        rhs += Fraction((-1 if j % 2 else 1) * aj,
                        math.factorial(j)) * xf ** j
    return abs(lhs - float(rhs)) / max(1.0, abs(lhs))


def _identity_linearization(rng):
    m = int(rng.integers(0, 6))
    al = int(rng.integers(0, 5))
    x = float(rng.uniform(0.05, 8.0))
    lhs = laguerre(m, al, x) ** 2
    cs = spectra._feldheim_ints(m, al)
    xf = Fraction(x)
    rhs = sum(c * _laguerre_exact(s, 2 * al, xf) for s, c in enumerate(cs))
    return abs(lhs - float(rhs)) / max(1.0, abs(lhs))


def _neg_alpha_laguerre(n, k, x):
    # L_n^(k-n)(x) for 0 <= k <= n via the index reflection identity
    return (-x) ** (n - k) * math.factorial(k) / math.factorial(n) \
        * laguerre(k, n - k, x)


def _identity_angular_sum(rng):
    n = int(rng.integers(0, 4))
    x = float(rng.uniform(0.1, 4.0))
    y = float(rng.uniform(0.1, 4.0))
    phi = float(rng.uniform(0.0, 2.0 * math.pi))
    w = math.sqrt(x * y) * complex(math.cos(phi), math.sin(phi))
    lhs = 0.0 + 0.0j
    for ell in range(n + 61):
        if ell < n:
            lag = _neg_alpha_laguerre(n, ell, x) * _neg_alpha_laguerre(n, ell, y)
        else:
            lag = laguerre(n, ell - n, x) * laguerre(n, ell - n, y)
        lhs += math.factorial(n) / math.factorial(ell) * w ** (ell - n) * lag
    arg = x + y - 2.0 * math.sqrt(x * y) * math.cos(phi)
    rhs = np.exp(w) * laguerre(n, 0, arg)
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def _identity_reflection(rng):
    m = int(rng.integers(0, 9))
    k = int(rng.integers(0, m + 1))
    x = float(rng.uniform(0.05, 8.0))
    # direct series for L_m^(k-m): binomial factor (k choose m-i)
    lhs = sum((-1.0 if i % 2 else 1.0) * _comb0(k, m - i)
              * x ** i / math.factorial(i) for i in range(m + 1))
    rhs = _neg_alpha_laguerre(m, k, x)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def _identity_contiguous(rng):
    a1 = float(rng.uniform(0.3, 3.0))
    a2 = float(rng.uniform(0.3, 3.0))
    b1 = float(rng.uniform(0.8, 4.0))
    d = int(rng.integers(0, 5))
    z = float(rng.uniform(-3.0, 3.0))
    t1 = pfq_value((a1, a2), (b1, d + 3.0), z) / (d + 2.0)
    t2 = pfq_value((a1, a2, d + 1.0), (b1, d + 2.0, d + 2.0), z) / (d + 1.0)
    t3 = pfq_value((a1, a2, d + 1.0), (b1, d + 2.0, d + 3.0), z) \
        / ((d + 2.0) * (d + 1.0))
    scale = max(1.0, abs(t1), abs(t2), abs(t3))
    return abs(t1 - t2 + t3) / scale


def check_identity_suites(instances=1000, seed=20240817):
    """Randomized checks of the five Laguerre/hypergeometric identities."""
    t0 = time.perf_counter()
    suites = {
        "laguerre product expansion": _identity_product,
        "squared-laguerre linearization": _identity_linearization,
        "angular product summation": _identity_angular_sum,
        "index reflection": _identity_reflection,
        "pFq contiguous relation": _identity_contiguous,
    }
    worst = {}
    for name, fn in suites.items():
        rng = np.random.default_rng(seed)
        worst[name] = max(fn(rng) for _ in range(instances))
    elapsed = time.perf_counter() - t0
    ok = all(w <= 1e-10 for w in worst.values()) and elapsed < 10.0
    detail = ", ".join(f"{k} {v:.2g}" for k, v in worst.items())
    return CheckResult(
        "identity property suites", ok,
        f"max errors ({instances} instances each): {detail}; "
        f"{elapsed:.1f}s (< 10s)")


def check_eigenvalue_oracles():
    """Closed-form eigenvalues against quadrature, both families."""
    worst_beta = 0.0
    for m in range(13):
        for k in range(13):
            for R in _GRID_R:
                b = spectra.beta_eigenvalue(m, k, R)
                worst_beta = max(worst_beta,
                                 abs(b - spectra.beta_eigenvalue_quadrature(m, k, R)))
    worst_lam = 0.0
    for m in _GRID_M:
        for R in _GRID_R:
            lam = spectra.lambda_eigenvalue_quadrature(m, m, R)
            var = statistics.variance_quadrature_38(m, R)
            worst_lam = max(worst_lam, abs(lam / math.pi - var)
                            / max(var, 1e-300))
    ok = worst_beta <= 1e-9 and worst_lam <= 1e-8
    return CheckResult(
        "eigenvalue closed forms vs quadrature", ok,
        f"max |beta closed - oracle| = {worst_beta:.3g} (<= 1e-9, m,k <= 12); "
        f"max rel |lambda_m/pi - variance| = {worst_lam:.3g} (<= 1e-8)")


def check_monte_carlo():
    """1e5 count replicates at (1, 2): moments within 4 SE, TV < 0.01."""
    t0 = time.perf_counter()
    s = sampler.sample_counts(1, 2.0, 100000, seed=20240817)
    mean, var, se_mean, se_var = sampler.estimate_cumulants(s)
    oracle = statistics.variance_quadrature_38(1, 2.0)
    pmf = sampler.exact_count_pmf(1, 2.0)
    hist = np.bincount(np.asarray(s.counts), minlength=pmf.size)
    emp = hist / hist.sum()
    if emp.size > pmf.size:
        pmf = np.pad(pmf, (0, emp.size - pmf.size))
    tv = 0.5 * float(np.abs(emp - pmf).sum())
    elapsed = time.perf_counter() - t0
    ok = (abs(mean - 4.0) <= 4.0 * se_mean
          and abs(var - oracle) <= 4.0 * se_var
          and tv < 0.01 and elapsed < 30.0)
    return CheckResult(
        "Monte Carlo count law", ok,
        f"mean {mean:.4f} (|d|/SE = {abs(mean - 4.0) / se_mean:.2f}), "
        f"variance {var:.4f} vs {oracle:.4f} "
        f"(|d|/SE = {abs(var - oracle) / se_var:.2f}), TV = {tv:.4f} "
        f"(< 0.01); {elapsed:.1f}s (< 30s)")


def _resolved_questions():
    """Measured evidence for each formula-level ambiguity resolution."""
    b = spectra.beta_eigenvalue(1, 1, 1.0)
    bq = spectra.beta_eigenvalue_quadrature(1, 1, 1.0)
    full = statistics._closed_form_bracket(spectra._feldheim_ints(2, 0), 1.0)
    short = statistics._closed_form_bracket(statistics._short_coeffs(2), 1.0)
    oracle = statistics.variance_quadrature_38(2, 1.0)
    slope = statistics.variance_quadrature_38(1, 40.0) / 40.0
    c1 = statistics.asymptotic_constant(1)
    cal = spectra.lambda_calibration_constant()
    return {
        "incomplete-gamma order": (
            "the Bernoulli closed form uses gamma(|k-m| + j + 1, R^2); the "
            "j - 1 variant would need gamma at order 0 for the leading term, "
            "which diverges. Evidence: |closed - quadrature| = "
            f"{abs(b - bq):.2g} at (m, k, R) = (1, 1, 1)."),
        "variance linearization upper limit": (
            "the squared-Laguerre linearization runs to s = 2m with the full "
            "product coefficients; the s <= m variant with binomial-times-3F2 "
            "coefficients drops nonzero terms.  Evidence at (m, R) = (2, 1): "
            f"full-range value {full:.12g} vs oracle {oracle:.12g} "
            f"(gap {abs(full - oracle):.2g}); short-range value {short:.12g} "
            f"(gap {abs(short - oracle):.2g})."),
        "asymptotic series terminating parameter": (
            "the slope constant uses the terminating numerator parameter -m; "
            "the +m reading diverges at unit argument.  Evidence: C_1 = "
            f"{c1:.7g} vs measured slope variance(1, 40)/40 = {slope:.7g} "
            f"(rel gap {abs(c1 - slope) / c1:.2g})."),
        "area-weight operator calibration": (
            "the variance equals the m-th area-weighted eigenvalue divided "
            "by pi; the single calibration constant between the closed-form "
            "and quadrature eigenvalues, measured at (m, k, R) = (0, 0, 1), "
            f"is {cal:.12g} (expected 1)."),
    }


def run_all():
    checks = (
        check_mean_identity(),
        check_route_agreement(),
        check_bessel_identity(),
        check_asymptotic_slope(),
        check_first_level_reduction(),
        check_identity_suites(),
        check_eigenvalue_oracles(),
        check_monte_carlo(),
    )
    report = ValidationReport(checks=checks,
                              resolved_questions=_resolved_questions())
    return report
