"""Pure-Python / numpy implementation of the numerical hot kernels.

The compiled module ``_fastfuncs`` mirrors this API exactly; the package
selects one of the two at import time (see ``polyginibre._backend``).

Kernels provided:

* Laguerre polynomials L_n^(alpha) by the three-term recurrence in n,
* regularized lower incomplete gamma P(a, x),
* exponentially scaled modified Bessel functions I0, I1,
* generalized hypergeometric Maclaurin series with double-double
  (error-free transformation) accumulation,
* exact Poisson-binomial pmf by convolution.
"""

import math

import numpy as np

BACKEND_NAME = "pure"

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def laguerre(n, alpha, x):
    """L_n^(alpha)(x) via the upward recurrence in degree."""
    if n == 0:
        return 1.0
    p0 = 1.0
    p1 = 1.0 + alpha - x
    for i in range(1, n):
        p0, p1 = p1, ((2 * i + 1 + alpha - x) * p1 - (i + alpha) * p0) / (i + 1)
    return p1


def laguerre_array(n, alpha, x):
    """Vectorized L_n^(alpha) over a float array."""
    x = np.asarray(x, dtype=float)
    if n == 0:
        return np.ones_like(x)
    p0 = np.ones_like(x)
    p1 = 1.0 + alpha - x
    for i in range(1, n):
        p0, p1 = p1, ((2 * i + 1 + alpha - x) * p1 - (i + alpha) * p0) / (i + 1)
    return p1


def gammainc_lower_reg(a, x):
    """Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).

    Power series below the a+1 branch point, Lentz continued fraction for the
    upper function beyond it.
    """
    if a <= 0.0:
        raise ValueError("gammainc_lower_reg requires a > 0")
    if x < 0.0:
        raise ValueError("gammainc_lower_reg requires x >= 0")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        ap = a
        s = 1.0 / a
        d = s
        for _ in range(100000):
            ap += 1.0
            d *= x / ap
            s += d
            if abs(d) < abs(s) * 1e-17:
                break
        return s * math.exp(-x + a * math.log(x) - math.lgamma(a))
    # continued fraction for Q(a, x), modified Lentz
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 100000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        de = d * c
        h *= de
        if abs(de - 1.0) < 1e-16:
            break
    q = math.exp(-x + a * math.log(x) - math.lgamma(a)) * h
    return 1.0 - q


def _i_series_scaled(order, ax):
    # power series of I_order times exp(-ax), ax <= 20
    q = ax * ax / 4.0
    t = 1.0
    s = 1.0
    k = 1
    while True:
        t *= q / (k * (k + order))
        s += t
        if t < s * 1e-18 or k > 400:
            break
        k += 1
    if order == 1:
        s *= ax / 2.0
    return s * math.exp(-ax)


def _i_asymptotic_scaled(order, ax):
    # exp(-ax) * I_order(ax) ~ (1/sqrt(2 pi ax)) sum_k (-)^k a_k(order)/ax^k
    mu = 4.0 * order * order
    t = 1.0
    s = 1.0
    for k in range(1, 60):
        factor = -(mu - (2 * k - 1) ** 2) / (8.0 * k * ax)
        nt = t * factor
        if abs(nt) >= abs(t):  # divergent tail reached
            break
        t = nt
        s += t
        if abs(t) < abs(s) * 1e-18:
            break
    return s / math.sqrt(2.0 * math.pi * ax)


def bessel_i0e(x):
    """exp(-|x|) * I0(x)."""
    ax = abs(x)
    if ax == 0.0:
        return 1.0
    if ax <= 20.0:
        return _i_series_scaled(0, ax)
    return _i_asymptotic_scaled(0, ax)


def bessel_i1e(x):
    """exp(-|x|) * I1(x); odd in x."""
    ax = abs(x)
    if ax == 0.0:
        return 0.0
    v = _i_series_scaled(1, ax) if ax <= 20.0 else _i_asymptotic_scaled(1, ax)
    return v if x >= 0.0 else -v


# --- double-double helpers (Dekker/Knuth error-free transformations) ---

def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    ta = _SPLITTER * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLITTER * b
    bhi = tb - (tb - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def _dd_add(xh, xl, yh, yl):
    sh, sl = _two_sum(xh, yh)
    sl += xl + yl
    h, l = _two_sum(sh, sl)
    return h, l


def _dd_mul_d(xh, xl, d):
    ph, pl = _two_prod(xh, d)
    pl += xl * d
    h, l = _two_sum(ph, pl)
    return h, l


def _dd_div_d(xh, xl, d):
    q0 = xh / d
    ph, pl = _two_prod(q0, d)
    rh = xh - ph
    rl = xl - pl
    q1 = (rh + rl) / d
    h, l = _two_sum(q0, q1)
    return h, l


def hyper_series(nums, dens, z, tol, max_terms):
    """Maclaurin series of pFq with double-double term and sum accumulation.

    Returns (value, terms_used, max_partial_abs, terminated, converged).
    ``terminated`` means some numerator parameter is a nonpositive integer
    and the series stopped exactly; ``converged`` covers both termination and
    the three-consecutive-small-terms stopping rule.  A denominator pole hit
    before termination raises ZeroDivisionError (callers translate it).
    """
    if z == 0.0:
        return 1.0, 1, 1.0, False, True
    th, tl = 1.0, 0.0  # current term
    sh, sl = 0.0, 0.0  # running sum
    max_partial = 0.0
    small_streak = 0
    terminated = False
    converged = False
    terms = 0
    for k in range(max_terms):
        sh, sl = _dd_add(sh, sl, th, tl)
        terms += 1
        ap = abs(sh)
        if ap > max_partial:
            max_partial = ap
        if abs(th) < tol * ap:
            small_streak += 1
            if small_streak >= 3:
                converged = True
                break
        else:
            small_streak = 0
        done = False
        for a in nums:
            if a + k == 0.0:
                done = True
                break
        if done:
            terminated = True
            converged = True
            break
        for a in nums:
            th, tl = _dd_mul_d(th, tl, a + k)
        for b in dens:
            bk = b + k
            if bk == 0.0:
                raise ZeroDivisionError("denominator parameter pole at term %d" % k)
            th, tl = _dd_div_d(th, tl, bk)
        th, tl = _dd_mul_d(th, tl, z)
        th, tl = _dd_div_d(th, tl, float(k + 1))
        if not math.isfinite(th):
            break
    return sh + sl, terms, max_partial, terminated, converged


def poisson_binomial_pmf(p):
    """Exact pmf of a sum of independent Bernoulli(p_k) by DP convolution."""
    p = np.asarray(p, dtype=float)
    pmf = np.zeros(p.size + 1)
    pmf[0] = 1.0
    n = 0
    for pk in p:
        pmf[1:n + 2] = pmf[1:n + 2] * (1.0 - pk) + pmf[0:n + 1] * pk
        pmf[0] *= 1.0 - pk
        n += 1
    return pmf
