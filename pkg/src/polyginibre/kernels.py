"""Reproducing kernels of the Landau-level eigenspaces and disk geometry.

Conventions fixed here and relied on everywhere else:

* the diagonal of the physical kernel is K_m(z, z) = 1/pi (first intensity
  of the point process), which pins the normalization of both kernels;
* coherent-state overlap coefficients are normalized to a unit-norm state,
  sum_k |c_k(z)|^2 = 1.
"""

import cmath
import math
from dataclasses import dataclass

from . import _backend

__all__ = [
    "LandauIndex", "DiskRadius", "kernel_point", "kernel_tilde",
    "scaled_intersection_area", "g_weight", "cs_overlap_coefficient",
]

_MAX_MODULUS = 600.0  # |z w*| beyond this overflows the unweighted kernel


@dataclass(frozen=True)
class LandauIndex:
    """Landau level index m, a nonnegative integer."""

    m: int

    def __post_init__(self):
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError("Landau index must be a nonnegative integer")


@dataclass(frozen=True)
class DiskRadius:
    """Radius R > 0 of the centered observation disk."""

    R: float

    def __post_init__(self):
        if not (self.R > 0 and math.isfinite(self.R)):
            raise ValueError("disk radius must be positive and finite")


def _index(m):
    return m.m if isinstance(m, LandauIndex) else LandauIndex(m).m


def _radius(R):
    return R.R if isinstance(R, DiskRadius) else DiskRadius(R).R


def kernel_point(m, z, w):
    """Correlation kernel K_m(z, w) on the flat plane.

    K_m(z, w) = pi^-1 exp(z w* - |z|^2/2 - |w|^2/2) L_m(|z - w|^2);
    the diagonal is identically 1/pi.  The Gaussian exponent has nonpositive
    real part, so no overflow guard is needed.
    """
    m = _index(m)
    z = complex(z)
    w = complex(w)
    expo = z * w.conjugate() - 0.5 * (abs(z) ** 2 + abs(w) ** 2)
    return (cmath.exp(expo) / math.pi) * _backend.laguerre(m, 0.0, abs(z - w) ** 2)


def kernel_tilde(m, z, w):
    """Reproducing kernel of the weighted (Gaussian-measure) space.

    Equals exp(|z|^2/2) K_m(z, w) exp(|w|^2/2); rejects |z|, |w| > 600 where
    the unweighted exponential overflows.
    """
    m = _index(m)
    z = complex(z)
    w = complex(w)
    if abs(z) > _MAX_MODULUS or abs(w) > _MAX_MODULUS:
        raise OverflowError("kernel_tilde rejects |z|, |w| > 600")
    return (cmath.exp(z * w.conjugate()) / math.pi) * _backend.laguerre(
        m, 0.0, abs(z - w) ** 2)


def scaled_intersection_area(r, R):
    """Normalized overlap area of two radius-R disks with centers r apart.

    alpha_R(r) = (4/pi) int_0^arccos(r/2R) sin^2 theta d theta, evaluated by
    the closed antiderivative (2/pi)(theta - sin theta cos theta); zero for
    r >= 2R.
    """
    R = _radius(R)
    if r < 0:
        raise ValueError("center distance r must be nonnegative")
    if r >= 2.0 * R:
        return 0.0
    theta = math.acos(r / (2.0 * R))
    return (2.0 / math.pi) * (theta - math.sin(theta) * math.cos(theta))


def g_weight(r, R):
    """Area of D_R(z)'s part outside the centered disk, at center distance r.

    G_R(r) = pi R^2 for r > 2R, else
    pi R^2 - 2 R^2 arccos(r / 2R) + (r/2) sqrt(4R^2 - r^2).
    """
    R = _radius(R)
    if r < 0:
        raise ValueError("center distance r must be nonnegative")
    if r >= 2.0 * R:
        return math.pi * R * R
    return (math.pi * R * R - 2.0 * R * R * math.acos(r / (2.0 * R))
            + 0.5 * r * math.sqrt(4.0 * R * R - r * r))


def cs_overlap_coefficient(m, k, z):
    """Coefficient of the k-th Hermite basis state in the coherent state.

    c_k(z) = exp(-|z|^2/2) sqrt((m^k)!/(mvk)!) |z|^(|k-m|)
             exp(i (m-k) arg z) L_(m^k)^(|k-m|)(|z|^2), where ^ and v denote
    min and max.  Normalized so sum_k |c_k(z)|^2 = 1, with the global phase
    fixed by c_m(0) = 1.
    """
    m = _index(m)
    if k < 0 or int(k) != k:
        raise ValueError("basis index k must be a nonnegative integer")
    z = complex(z)
    az = abs(z)
    if az > _MAX_MODULUS:
        raise ValueError("cs_overlap_coefficient supports |z| <= 600")
    mn, mx = min(m, k), max(m, k)
    d = mx - mn
    if az == 0.0:
        return complex(1.0) if k == m else 0.0j
    # magnitude in log space: the |z|^d / sqrt(max!/min!) product underflows
    # componentwise long before the combined value does
    logmag = (0.5 * (math.lgamma(mn + 1.0) - math.lgamma(mx + 1.0))
              + d * math.log(az) - 0.5 * az * az)
    lag = _backend.laguerre(mn, float(d), az * az)
    phase = cmath.exp(1j * (m - k) * cmath.phase(z))
    return math.exp(logmag) * lag * phase
