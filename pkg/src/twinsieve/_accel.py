"""Backend selection for the hot kernels.

Numba is used when importable unless ``TWINSIEVE_DISABLE_NUMBA`` is set to a
truthy value before import; otherwise kernels run as plain numpy.
"""
from __future__ import annotations

import os

_FLAG = os.environ.get("TWINSIEVE_DISABLE_NUMBA", "").strip().lower()
DISABLED_BY_ENV = _FLAG not in ("", "0", "false", "no")

try:
    if DISABLED_BY_ENV:
        raise ImportError("numba disabled by TWINSIEVE_DISABLE_NUMBA")
    import numba

    NUMBA_AVAILABLE = True
except ImportError:
    numba = None
    NUMBA_AVAILABLE = False


def njit(func):
    """Compile ``func`` with numba (nogil, cached) when available."""
    if not NUMBA_AVAILABLE:
        return func
    return numba.njit(cache=True, nogil=True)(func)


BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"
