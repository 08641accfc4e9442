"""Kernel backend selection.

Set ``BUCHIGAMES_BACKEND=numpy`` to run without numba: the attractor and
level-graph kernels then use vectorised numpy code and the lifting kernel
runs as plain Python.  The default is ``numba`` when it can be imported.
"""
import os
import warnings

BACKEND_ENV = "BUCHIGAMES_BACKEND"

try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def _requested_backend():
    value = os.environ.get(BACKEND_ENV, "numba").strip().lower()
    if value not in ("numba", "numpy"):
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {value!r}")
    if value == "numba" and not HAVE_NUMBA:
        warnings.warn("numba is not importable, falling back to the numpy backend")
        return "numpy"
    return value


BACKEND = _requested_backend()
USE_NUMBA = BACKEND == "numba"


def njit(func):
    """Compile ``func`` with numba when available; keep ``.py_func`` either way."""
    if not HAVE_NUMBA:
        func.py_func = func
        return func
    return numba.njit(cache=True, nogil=True)(func)
