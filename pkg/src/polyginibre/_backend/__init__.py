"""Backend selection: compiled Cython kernels with a pure-numpy fallback.

Set ``POLYGINIBRE_BACKEND=pure`` or ``POLYGINIBRE_BACKEND=compiled`` to force
a choice; the default prefers the compiled extension when it imported cleanly.
"""

import os

from . import _purefuncs

_choice = os.environ.get("POLYGINIBRE_BACKEND", "").strip().lower()

impl = None
if _choice != "pure":
    try:
        from . import _fastfuncs as impl
    except ImportError:
        impl = None
        if _choice == "compiled":
            raise ImportError(
                "POLYGINIBRE_BACKEND=compiled but the extension is not built")
if impl is None:
    impl = _purefuncs

BACKEND = impl.BACKEND_NAME

laguerre = impl.laguerre
laguerre_array = impl.laguerre_array
gammainc_lower_reg = impl.gammainc_lower_reg
bessel_i0e = impl.bessel_i0e
bessel_i1e = impl.bessel_i1e
hyper_series = impl.hyper_series
poisson_binomial_pmf = impl.poisson_binomial_pmf
