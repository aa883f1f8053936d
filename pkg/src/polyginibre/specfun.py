"""Special functions: Laguerre polynomials, incomplete gamma, pFq, Bessel I.

Every formula downstream (eigenvalues, variances, asymptotic constants)
bottoms out here.  All evaluations carry explicit accuracy diagnostics or a
documented error bound; nothing is delegated to an external special-function
library.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _backend
from .exceptions import InvalidParameters, NonConvergent

__all__ = [
    "SeriesResult", "PFqSpec", "laguerre", "lower_incomplete_gamma",
    "regularized_lower_gamma", "pfq", "pfq_value", "pfq_rational", "bessel_i",
]


@dataclass(frozen=True)
class SeriesResult:
    """Value of a series evaluation plus convergence diagnostics.

    ``cancellation_digits`` is log10 of the largest intermediate partial sum
    over the final value: the number of leading digits lost to alternating
    cancellation.  The series accumulator runs in double-double arithmetic;
    beyond 10 lost digits the evaluation is redone in exact rational
    arithmetic and ``exact`` is set, in which case the result is correct to
    double rounding regardless of the reported cancellation.
    """

    value: float
    terms_used: int
    cancellation_digits: float
    converged: bool
    exact: bool = False


@dataclass(frozen=True)
class PFqSpec:
    """Parameters of a generalized hypergeometric series pFq.

    A denominator parameter that is a nonpositive integer is only allowed if
    some numerator parameter is a nonpositive integer of smaller magnitude,
    so the series terminates before the pole is reached.
    """

    numerator: tuple = field(default=())
    denominator: tuple = field(default=())
    argument: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "numerator",
                           tuple(float(a) for a in self.numerator))
        object.__setattr__(self, "denominator",
                           tuple(float(b) for b in self.denominator))
        object.__setattr__(self, "argument", float(self.argument))
        pole = self._first_pole()
        if pole is not None:
            stop = self._termination_index()
            if stop is None or stop > pole:
                raise InvalidParameters(
                    f"denominator parameter {-pole} is a nonpositive integer "
                    "and no numerator parameter terminates the series first")

    def _first_pole(self):
        poles = [int(-b) for b in self.denominator
                 if b <= 0 and b == int(b)]
        return min(poles) if poles else None

    def _termination_index(self):
        stops = [int(-a) for a in self.numerator if a <= 0 and a == int(a)]
        return min(stops) if stops else None


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x), alpha a nonneg integer.

    Accepts a scalar or an ndarray argument.
    """
    if n < 0 or int(n) != n:
        raise ValueError("degree n must be a nonnegative integer")
    if alpha < 0 or int(alpha) != alpha:
        raise ValueError("alpha must be a nonnegative integer")
    if isinstance(x, np.ndarray):
        return _backend.laguerre_array(int(n), float(alpha), x)
    return _backend.laguerre(int(n), float(alpha), float(x))


def regularized_lower_gamma(a, x):
    """P(a, x) = gamma(a, x) / Gamma(a), always in [0, 1]."""
    return _backend.gammainc_lower_reg(float(a), float(x))


def lower_incomplete_gamma(a, x):
    """Lower incomplete gamma gamma(a, x) = int_0^x t^(a-1) e^(-t) dt.

    Series below x = a + 1, continued fraction beyond.  Relative error is
    <= 1e-13 wherever the value is representable in double precision; use
    ``regularized_lower_gamma`` for large ``a`` where Gamma(a) overflows.
    """
    if a <= 0:
        raise ValueError("lower_incomplete_gamma requires a > 0")
    if x < 0:
        raise ValueError("lower_incomplete_gamma requires x >= 0")
    p = _backend.gammainc_lower_reg(float(a), float(x))
    if p == 0.0:
        return 0.0
    lg = math.lgamma(a)
    if lg + math.log(p) > 709.0:
        raise OverflowError("gamma(a, x) exceeds double range; "
                            "use regularized_lower_gamma")
    return p * math.exp(lg)


_RATIONAL_SWITCH = 10.0


def _frac_log10(f):
    # magnitude of a Fraction without converting it to (possibly
    # overflowing) float
    if f == 0:
        return -math.inf
    return (f.numerator.bit_length() - f.denominator.bit_length()) * math.log10(2.0)


def pfq_rational(numerator, denominator, z, max_terms=20000):
    """Maclaurin sum of pFq in exact rational arithmetic.

    Every double is an exact rational, so the only rounding is the final
    conversion to float.  Returns (value as Fraction, terms used,
    cancellation digits the sum would have cost in floating point).
    Intended for strongly cancelling arguments; cost grows with |z|.
    """
    nums = [Fraction(a) for a in numerator]
    dens = [Fraction(b) for b in denominator]
    zf = Fraction(z)
    term = Fraction(1)
    total = Fraction(1)
    max_log = 0.0
    small = 0
    for k in range(max_terms):
        if any(a + k == 0 for a in nums):
            return total, k + 1, max_log - _frac_log10(total)
        num = zf
        den = Fraction(k + 1)
        for a in nums:
            num *= a + k
        for b in dens:
            den *= b + k
        if den == 0:
            raise InvalidParameters(
                f"denominator parameter pole reached at term {k}")
        term = term * num / den
        total += term
        max_log = max(max_log, _frac_log10(total))
        # terms eventually decay superexponentially; once they are far below
        # the (post-cancellation) running sum the series has converged
        if _frac_log10(term) < _frac_log10(total) - 30.0:
            small += 1
            if small >= 3:
                return total, k + 2, max_log - _frac_log10(total)
        else:
            small = 0
    raise NonConvergent(
        f"rational pFq at z={z} did not converge within {max_terms} terms")


def pfq(spec, max_terms=20000, tol=1e-16):
    """Evaluate pFq(numerator; denominator; z) by direct Maclaurin summation.

    Terms and partial sums are accumulated in double-double arithmetic.  The
    sum stops when the series terminates (a numerator parameter is a
    nonpositive integer) or when |term| < tol * |partial sum| holds for three
    consecutive terms.  When the cancellation monitor reports more than 10
    lost digits the sum is redone in exact rational arithmetic, which costs
    more but is immune to cancellation.  Raises NonConvergent when the term
    budget is exhausted.
    """
    if not isinstance(spec, PFqSpec):
        raise TypeError("pfq expects a PFqSpec")
    try:
        value, terms, max_partial, _terminated, converged = _backend.hyper_series(
            spec.numerator, spec.denominator, spec.argument, tol, max_terms)
    except ZeroDivisionError as exc:
        raise InvalidParameters(str(exc)) from None
    if value == 0.0 or not math.isfinite(value) or not math.isfinite(max_partial):
        digits = math.inf if max_partial != 0.0 else 0.0
    else:
        digits = max(0.0, math.log10(max_partial / abs(value)))
    if converged and digits <= _RATIONAL_SWITCH:
        return SeriesResult(value=value, terms_used=terms,
                            cancellation_digits=digits, converged=True)
    frac, terms, digits = pfq_rational(spec.numerator, spec.denominator,
                                       spec.argument, max_terms=max_terms)
    return SeriesResult(value=float(frac), terms_used=terms,
                        cancellation_digits=max(digits, 0.0),
                        converged=True, exact=True)


def pfq_value(numerator, denominator, z, **kwargs):
    """Shorthand: evaluate pFq and return only the value."""
    return pfq(PFqSpec(tuple(numerator), tuple(denominator), z), **kwargs).value


def bessel_i(order, x, scaled=False):
    """Modified Bessel function I0 or I1.

    Power series for |x| <= 20, asymptotic expansion beyond; relative error
    <= 1e-12 on |x| <= 1e4.  With ``scaled=True`` returns exp(-|x|) I(x),
    which never overflows; unscaled evaluation raises OverflowError when
    exp(|x|) is not representable.
    """
    if order not in (0, 1):
        raise ValueError("only orders 0 and 1 are supported")
    if abs(x) > 1e4:
        raise ValueError("bessel_i supports |x| <= 1e4")
    v = _backend.bessel_i0e(float(x)) if order == 0 else _backend.bessel_i1e(float(x))
    if scaled:
        return v
    if abs(x) > 709.0:
        raise OverflowError("exp(|x|) overflows; request the scaled variant")
    return v * math.exp(abs(x))


def log_factorial(n):
    """log(n!) for integer n >= 0."""
    return math.lgamma(n + 1.0)


def reciprocal_factorial(n):
    """1/n! extended by 0 at negative integers (empty inner-sum terms)."""
    if n < 0:
        return 0.0
    return math.exp(-math.lgamma(n + 1.0))
