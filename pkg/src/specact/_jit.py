"""Optional numba acceleration.

Hot loops are written once in a numba-compatible subset of Python.  When
numba is importable and ``SPECACT_DISABLE_JIT`` is unset (or ``0``), they are
compiled with ``numba.njit``; otherwise the decorator is the identity and the
same bodies run as plain numpy/Python.
"""

import os

_FLAG = os.environ.get("SPECACT_DISABLE_JIT", "0").strip().lower()
JIT_REQUESTED = _FLAG not in ("1", "true", "yes", "on")

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    _numba = None

JIT_ENABLED = JIT_REQUESTED and _numba is not None


def jit(fn=None, **options):
    """``numba.njit(cache=True, nogil=True)`` or a no-op, per the env flag."""

    def wrap(f):
        if not JIT_ENABLED:
            return f
        opts = {"cache": True, "nogil": True}
        opts.update(options)
        return _numba.njit(**opts)(f)

    if fn is None:
        return wrap
    return wrap(fn)


def backend() -> str:
    return "numba" if JIT_ENABLED else "numpy"
