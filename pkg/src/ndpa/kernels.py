"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the numpy
versions are used. Set ``NDPA_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("NDPA_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py
    else:
        BACKEND = "cython"
else:
    _impl = _kernels_py

laguerre_recurrence = _impl.laguerre_recurrence
rk4_tridiag = _impl.rk4_tridiag

__all__ = ["BACKEND", "laguerre_recurrence", "rk4_tridiag"]
