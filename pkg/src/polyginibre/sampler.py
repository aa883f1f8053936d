"""Monte Carlo sampling of the disk count and of spatial configurations.

The count is sampled exactly from its Bernoulli representation.  Replicate
streams use a counter-based generator keyed by (seed, replicate index), so
results are identical no matter how replicates are scheduled across workers.
"""

import io
import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .exceptions import EnvelopeViolation, InsufficientData
from .kernels import DiskRadius, LandauIndex
from .spectra import build_eigenvalue_table

__all__ = [
    "CountSample", "PointConfiguration", "sample_counts",
    "sample_configuration", "estimate_cumulants", "exact_count_pmf",
]


def _mi(m):
    return m.m if isinstance(m, LandauIndex) else LandauIndex(m).m


def _rad(R):
    return R.R if isinstance(R, DiskRadius) else DiskRadius(R).R


@dataclass(frozen=True)
class CountSample:
    """Replicated draws of the number of points in the disk."""

    counts: tuple
    seed: int
    m: int
    R: float
    truncation: int
    tail_bound: float

    def __post_init__(self):
        if any(c < 0 or c > self.truncation + 1 for c in self.counts):
            raise ValueError("counts must lie in [0, K + 1]")

    def to_csv(self):
        buf = io.StringIO()
        buf.write("count\n")
        for c in self.counts:
            buf.write(f"{c}\n")
        return buf.getvalue()


@dataclass(frozen=True)
class PointConfiguration:
    """One spatial realization of the process restricted to the disk."""

    points: tuple
    seed: int

    def to_csv(self):
        buf = io.StringIO()
        buf.write("re,im\n")
        for z in self.points:
            buf.write(f"{z.real:.17g},{z.imag:.17g}\n")
        return buf.getvalue()


def _replicate_rng(seed, index):
    # independent counter-based stream per replicate: parallel generation
    # cannot change results
    return np.random.Generator(np.random.Philox(key=[seed, index]))


def sample_counts(m, R, replicates, seed, tol=1e-8):
    """Draw the disk count ``replicates`` times.

    Each replicate sums independent Bernoulli(beta_k) indicators over the
    truncated eigenvalue table; the neglected tail mass is recorded in the
    sample metadata.
    """
    m, R = _mi(m), _rad(R)
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    table = build_eigenvalue_table(m, R, tol=tol)
    betas = np.asarray(table.values)
    counts = np.empty(replicates, dtype=np.int64)
    for i in range(replicates):
        rng = _replicate_rng(seed, i)
        counts[i] = int((rng.random(betas.size) < betas).sum())
    return CountSample(counts=tuple(int(c) for c in counts), seed=int(seed),
                       m=m, R=R, truncation=betas.size - 1,
                       tail_bound=table.tail_bound)


def exact_count_pmf(m, R, tol=1e-8):
    """Exact Poisson-binomial law of the count from the eigenvalue table."""
    table = build_eigenvalue_table(_mi(m), _rad(R), tol=tol)
    return np.asarray(_backend.poisson_binomial_pmf(
        np.asarray(table.values, dtype=float)))


def estimate_cumulants(sample):
    """Unbiased sample mean and variance with standard errors.

    The variance standard error uses the fourth central moment:
    SE^2 = (m4 - var^2 (n - 3)/(n - 1)) / n.
    """
    counts = np.asarray(sample.counts, dtype=float)
    n = counts.size
    if n < 2:
        raise InsufficientData("cumulant estimation needs >= 2 replicates")
    mean = counts.mean()
    var = counts.var(ddof=1)
    se_mean = math.sqrt(var / n)
    m4 = np.mean((counts - mean) ** 4)
    se_var_sq = (m4 - var * var * (n - 3.0) / (n - 1.0)) / n
    se_var = math.sqrt(max(se_var_sq, 0.0))
    return mean, var, se_mean, se_var


class _DiskBasis:
    """Orthonormal disk-restricted eigenfunctions for the selected indices.

    psi_k(z) = phi_k(z) / sqrt(beta_k), with phi_k the unit-norm plane
    eigenfunction carrying angular factor e^{i (k - m) theta}; distinct k
    stay orthogonal on the disk by angular orthogonality, and dividing by
    sqrt(beta_k) restores unit disk norm.
    """

    def __init__(self, m, R, indices, betas):
        self.m = m
        self.R = R
        self.indices = list(indices)
        self.logpref = []
        for k, b in zip(self.indices, betas):
            mn, mx = min(m, k), max(m, k)
            lp = 0.5 * (math.lgamma(mn + 1.0) - math.lgamma(mx + 1.0)
                        - math.log(math.pi) - math.log(b))
            self.logpref.append(lp)

    def feature_matrix(self, z):
        """(len(z), len(indices)) matrix of psi_k(z_i)."""
        z = np.asarray(z, dtype=complex)
        r2 = (z * z.conj()).real
        theta = np.angle(z)
        cols = []
        for k, lp in zip(self.indices, self.logpref):
            mn = min(self.m, k)
            d = abs(k - self.m)
            lag = _backend.laguerre_array(mn, float(d), r2)
            if d == 0:
                logmag = lp - 0.5 * r2
            else:
                with np.errstate(divide="ignore"):
                    logr2 = np.log(np.maximum(r2, 1e-300))
                logmag = lp + 0.5 * d * logr2 - 0.5 * r2
            cols.append(np.exp(logmag) * lag
                        * np.exp(1j * (k - self.m) * theta))
        return np.column_stack(cols)


def _envelope(basis, grid_n):
    # grid-estimated sup of the total intensity, inflated by the safety
    # factor; bounds every sequential conditional density from above
    r = np.sqrt(np.linspace(0.0, 1.0, grid_n)) * basis.R
    t = np.linspace(0.0, 2.0 * math.pi, grid_n, endpoint=False)
    zz = (r[:, None] * np.exp(1j * t[None, :])).ravel()
    feats = basis.feature_matrix(zz)
    dens = (np.abs(feats) ** 2).sum(axis=1)
    return 1.5 * float(dens.max())


def sample_configuration(m, R, seed, tol=1e-8):
    """Draw one spatial realization of the disk-restricted process.

    Index set by independent Bernoulli(beta_k), then sequential projection
    sampling: each next point is drawn by rejection from its conditional
    density under a gridded envelope.  A proposal beating the envelope
    triggers a finer rebuild; three failed rebuilds raise EnvelopeViolation.
    """
    m, R = _mi(m), _rad(R)
    if m > 4 or R > 4:
        raise ValueError("spatial sampling is supported for m <= 4, R <= 4")
    table = build_eigenvalue_table(m, R, tol=tol)
    rng = _replicate_rng(seed, 0)
    betas = np.asarray(table.values)
    sel = rng.random(betas.size) < betas
    indices = np.nonzero(sel)[0]
    if indices.size == 0:
        return PointConfiguration(points=(), seed=int(seed))
    basis = _DiskBasis(m, R, indices, betas[indices])

    grid_n = 64
    for rebuild in range(4):
        try:
            points = _sequential_sample(basis, rng, _envelope(basis, grid_n))
            return PointConfiguration(points=tuple(points), seed=int(seed))
        except EnvelopeViolation:
            if rebuild == 3:
                raise
            grid_n *= 2
    raise EnvelopeViolation("density exceeded envelope after 3 rebuilds")


def _sequential_sample(basis, rng, envelope):
    n = len(basis.indices)
    ortho = []  # orthonormal feature vectors of the points drawn so far
    points = []
    for _i in range(n):
        accepted = None
        for _attempt in range(4000):
            # batch of uniform proposals in the disk
            u = rng.random(256)
            t = rng.random(256) * 2.0 * math.pi
            z = np.sqrt(u) * basis.R * np.exp(1j * t)
            feats = basis.feature_matrix(z)
            dens = (np.abs(feats) ** 2).sum(axis=1)
            for e in ortho:
                dens -= np.abs(feats @ e.conj()) ** 2
            dens = np.maximum(dens, 0.0)
            if (dens > envelope).any():
                raise EnvelopeViolation(
                    f"conditional density {dens.max():.3g} exceeded "
                    f"envelope {envelope:.3g}")
            acc = rng.random(256) * envelope < dens
            hits = np.nonzero(acc)[0]
            if hits.size:
                accepted = int(hits[0])
                break
        if accepted is None:
            raise EnvelopeViolation("rejection sampling failed to accept")
        points.append(complex(z[accepted]))
        v = feats[accepted].copy()
        for e in ortho:
            v -= (e.conj() @ v) * e
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            ortho.append(v / norm)
    return points
