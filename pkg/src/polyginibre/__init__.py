"""Point-count statistics of polyanalytic Ginibre-type determinantal
processes in a disk: eigenvalue tables, mean/variance routes, and a
configuration sampler, with a compiled kernel backend when available."""

from ._backend import BACKEND
from .exceptions import (
    AccuracyLoss,
    BudgetExceeded,
    EnvelopeViolation,
    InsufficientData,
    InvalidParameters,
    NonConvergent,
    PolyGinibreError,
)
from .kernels import DiskRadius, LandauIndex
from .spectra import EigenvalueTable, build_eigenvalue_table

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "__version__",
    "PolyGinibreError", "NonConvergent", "InvalidParameters", "AccuracyLoss",
    "BudgetExceeded", "EnvelopeViolation", "InsufficientData",
    "LandauIndex", "DiskRadius",
    "EigenvalueTable", "build_eigenvalue_table",
]
