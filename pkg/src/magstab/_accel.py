"""Optional numba acceleration with a pure-numpy fallback.

The backend is selected once at import time from the environment variable
``MAGSTAB_BACKEND``:

    auto   (default)  use numba when importable, else plain python
    numba             require numba, fail loudly if missing
    numpy             force the un-jitted fallback

The hot kernels are written in a numba-compatible numpy subset, so the same
source runs under either backend; ``tests/test_backends.py`` pins agreement
and ``benchmarks/bench_backends.py`` compares speed.
"""

from __future__ import annotations

import os
import warnings

_requested = os.environ.get("MAGSTAB_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"MAGSTAB_BACKEND must be auto|numba|numpy, got {_requested!r}")

BACKEND = "numpy"
if _requested in ("auto", "numba"):
    try:
        from numba import njit as _njit
        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        warnings.warn("numba not importable; falling back to the pure-numpy backend")

if BACKEND == "numba":
    def maybe_jit(func=None, **kwargs):
        kwargs.setdefault("cache", True)
        kwargs.setdefault("nogil", True)
        if func is not None:
            return _njit(**kwargs)(func)
        return _njit(**kwargs)
else:
    def maybe_jit(func=None, **kwargs):
        if func is not None:
            return func
        return lambda f: f
