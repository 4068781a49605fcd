"""Optional numba acceleration.

Set ``AHG_DISABLE_NUMBA=1`` to force the pure-numpy kernels (useful for
debugging, coverage, or environments where LLVM is unavailable).
"""

import os

_DISABLE_VALUES = {"1", "true", "yes", "on"}


def _numba_requested() -> bool:
    return os.environ.get("AHG_DISABLE_NUMBA", "").strip().lower() not in _DISABLE_VALUES


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _numba_requested()


def njit(func):
    """``numba.njit(cache=True)`` when available, otherwise the identity."""
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return func
