"""Hot numeric kernels with two interchangeable backends.

``numba_impl`` holds ``@njit`` loop kernels; ``numpy_impl`` holds vectorized
equivalents with identical signatures. The numba path is used when numba is
importable unless ``SPINHAF_DISABLE_NUMBA`` is set to a truthy value before
import.

All kernels use 0-based bit positions: spin ``i`` (1-based) is bit ``i - 1``.
Kernels that take ``psi`` and return nothing update it in place.
"""

import os

from . import numpy_impl

ENV_FLAG = "SPINHAF_DISABLE_NUMBA"


def _numba_disabled_by_env():
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    from . import numba_impl
except ImportError:  # numba not installed
    numba_impl = None

NUMBA_AVAILABLE = numba_impl is not None
NUMBA_ENABLED = NUMBA_AVAILABLE and not _numba_disabled_by_env()

BACKENDS = {"numpy": numpy_impl}
if NUMBA_AVAILABLE:
    BACKENDS["numba"] = numba_impl

BACKEND = "numba" if NUMBA_ENABLED else "numpy"
_active = BACKENDS[BACKEND]

apply_xx = _active.apply_xx
rotate_xx = _active.rotate_xx
apply_1q = _active.apply_1q
hafnian_table = _active.hafnian_table
complement_diag_products = _active.complement_diag_products
permanent_ryser = _active.permanent_ryser


def get_backend(name):
    """Return the kernel module registered under ``name`` ("numba" or "numpy")."""
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}"
        ) from None


__all__ = [
    "BACKEND",
    "BACKENDS",
    "ENV_FLAG",
    "NUMBA_AVAILABLE",
    "NUMBA_ENABLED",
    "apply_1q",
    "apply_xx",
    "complement_diag_products",
    "get_backend",
    "hafnian_table",
    "permanent_ryser",
    "rotate_xx",
]
