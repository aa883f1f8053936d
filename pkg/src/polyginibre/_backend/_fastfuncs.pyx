# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementation of the numerical hot kernels.

API mirror of ``_purefuncs``; see that module for the reference semantics.
"""

from libc.math cimport exp, log, lgamma, sqrt, fabs, isfinite, fma, M_PI

import numpy as np

BACKEND_NAME = "compiled"


cpdef double laguerre(int n, double alpha, double x):
    cdef double p0 = 1.0, p1 = 1.0 + alpha - x, tmp
    cdef int i
    if n == 0:
        return 1.0
    for i in range(1, n):
        tmp = ((2 * i + 1 + alpha - x) * p1 - (i + alpha) * p0) / (i + 1)
        p0 = p1
        p1 = tmp
    return p1


def laguerre_array(int n, double alpha, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out_arr = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t j
    for j in range(xv.shape[0]):
        out[j] = laguerre(n, alpha, xv[j])
    return out_arr.reshape(np.shape(x))


cpdef double gammainc_lower_reg(double a, double x) except? -1.0:
    cdef double ap, s, d, b, c, h, an, de, q
    cdef int i
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
        for i in range(100000):
            ap += 1.0
            d *= x / ap
            s += d
            if fabs(d) < fabs(s) * 1e-17:
                break
        return s * exp(-x + a * log(x) - lgamma(a))
    b = x + 1.0 - a
    c = 1.0 / 1e-300
    d = 1.0 / b
    h = d
    for i in range(1, 100000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if fabs(d) < 1e-300:
            d = 1e-300
        c = b + an / c
        if fabs(c) < 1e-300:
            c = 1e-300
        d = 1.0 / d
        de = d * c
        h *= de
        if fabs(de - 1.0) < 1e-16:
            break
    q = exp(-x + a * log(x) - lgamma(a)) * h
    return 1.0 - q


cdef double _i_series_scaled(int order, double ax):
    cdef double q = ax * ax / 4.0, t = 1.0, s = 1.0
    cdef int k = 1
    while True:
        t *= q / (k * (k + order))
        s += t
        if t < s * 1e-18 or k > 400:
            break
        k += 1
    if order == 1:
        s *= ax / 2.0
    return s * exp(-ax)


cdef double _i_asymptotic_scaled(int order, double ax):
    cdef double mu = 4.0 * order * order, t = 1.0, s = 1.0, nt
    cdef int k
    for k in range(1, 60):
        nt = t * (-(mu - (2 * k - 1) * (2 * k - 1)) / (8.0 * k * ax))
        if fabs(nt) >= fabs(t):
            break
        t = nt
        s += t
        if fabs(t) < fabs(s) * 1e-18:
            break
    return s / sqrt(2.0 * M_PI * ax)


cpdef double bessel_i0e(double x):
    cdef double ax = fabs(x)
    if ax == 0.0:
        return 1.0
    if ax <= 20.0:
        return _i_series_scaled(0, ax)
    return _i_asymptotic_scaled(0, ax)


cpdef double bessel_i1e(double x):
    cdef double ax = fabs(x), v
    if ax == 0.0:
        return 0.0
    v = _i_series_scaled(1, ax) if ax <= 20.0 else _i_asymptotic_scaled(1, ax)
    return v if x >= 0.0 else -v


# double-double arithmetic on (hi, lo) pairs, fma-based error terms

cdef inline void _dd_add_d(double* h, double* l, double yh, double yl) nogil:
    cdef double s = h[0] + yh
    cdef double bb = s - h[0]
    cdef double e = (h[0] - (s - bb)) + (yh - bb) + l[0] + yl
    h[0] = s + e
    l[0] = e - (h[0] - s)

cdef inline void _dd_mul_d(double* h, double* l, double d) nogil:
    cdef double p = h[0] * d
    cdef double e = fma(h[0], d, -p) + l[0] * d
    h[0] = p + e
    l[0] = e - (h[0] - p)

cdef inline void _dd_div_d(double* h, double* l, double d) nogil:
    cdef double q0 = h[0] / d
    cdef double p = q0 * d
    cdef double e = fma(q0, d, -p)
    cdef double q1 = ((h[0] - p) - e + l[0]) / d
    cdef double s = q0 + q1
    l[0] = q1 - (s - q0)
    h[0] = s


def hyper_series(nums, dens, double z, double tol, int max_terms):
    cdef double[::1] a = np.ascontiguousarray(nums, dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(dens, dtype=np.float64)
    cdef double th = 1.0, tl = 0.0, sh = 0.0, sl = 0.0
    cdef double max_partial = 0.0, ap, bk
    cdef int small_streak = 0, terms = 0, k
    cdef Py_ssize_t i
    cdef bint terminated = False, converged = False, done
    if z == 0.0:
        return 1.0, 1, 1.0, False, True
    for k in range(max_terms):
        _dd_add_d(&sh, &sl, th, tl)
        terms += 1
        ap = fabs(sh)
        if ap > max_partial:
            max_partial = ap
        if fabs(th) < tol * ap:
            small_streak += 1
            if small_streak >= 3:
                converged = True
                break
        else:
            small_streak = 0
        done = False
        for i in range(a.shape[0]):
            if a[i] + k == 0.0:
                done = True
                break
        if done:
            terminated = True
            converged = True
            break
        for i in range(a.shape[0]):
            _dd_mul_d(&th, &tl, a[i] + k)
        for i in range(b.shape[0]):
            bk = b[i] + k
            if bk == 0.0:
                raise ZeroDivisionError("denominator parameter pole at term %d" % k)
            _dd_div_d(&th, &tl, bk)
        _dd_mul_d(&th, &tl, z)
        _dd_div_d(&th, &tl, <double>(k + 1))
        if not isfinite(th):
            break
    return sh + sl, terms, max_partial, terminated, converged


def poisson_binomial_pmf(p):
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    out_arr = np.zeros(pv.shape[0] + 1, dtype=np.float64)
    cdef double[::1] pmf = out_arr
    cdef Py_ssize_t n = 0, j
    cdef double pk
    pmf[0] = 1.0
    for i in range(pv.shape[0]):
        pk = pv[i]
        for j in range(n + 1, 0, -1):
            pmf[j] = pmf[j] * (1.0 - pk) + pmf[j - 1] * pk
        pmf[0] *= 1.0 - pk
        n += 1
    return out_arr
