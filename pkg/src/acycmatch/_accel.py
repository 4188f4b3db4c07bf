"""Backend selection for the numeric kernels.

Set ``ACYCMATCH_BACKEND=numpy`` to force the pure-numpy code path.  The
default is ``numba`` whenever numba imports cleanly.
"""

from __future__ import annotations

import os

_requested = os.environ.get("ACYCMATCH_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"ACYCMATCH_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
BACKEND = "numba" if (_requested == "numba" and HAVE_NUMBA) else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` with caching, or an identity decorator without numba."""
    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)
    if _numba is None:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn
    return _numba.njit(*args, **kwargs)


def worker_count(default: int = 1) -> int:
    raw = os.environ.get("ACYCMATCH_THREADS")
    if not raw:
        return default
    value = int(raw)
    if value < 1:
        raise ValueError("ACYCMATCH_THREADS must be >= 1")
    return value
