"""Backend selection for the integer kernels.

The compiled ``_native`` module is used when it imported successfully and
``STRONGHOM_PURE_PYTHON`` is unset.  Native calls that overflow int64 are
transparently recomputed with the arbitrary-precision Python kernel.
"""

import os

from . import _pykernels

try:
    from . import _native
except ImportError:  # extension not built
    _native = None

if os.environ.get("STRONGHOM_PURE_PYTHON"):
    _native = None

BACKEND = "native" if _native is not None else "python"

__all__ = ["BACKEND", "snf", "hnf", "hsolve", "matmul", "native_available"]


def native_available():
    return _native is not None


def snf(rows, m, n, backend=None):
    """Smith form kernel; see :func:`stronghom._pykernels.snf`."""
    if backend is None:
        backend = BACKEND
    if backend == "native" and _native is not None:
        try:
            return _native.snf(rows, m, n)
        except OverflowError:
            pass
    return _pykernels.snf(rows, m, n)


def hnf(rows, m, n, backend=None):
    """Column Hermite form kernel; see :func:`stronghom._pykernels.hnf`."""
    if backend is None:
        backend = BACKEND
    if backend == "native" and _native is not None:
        try:
            return _native.hnf(rows, m, n)
        except OverflowError:
            pass
    return _pykernels.hnf(rows, m, n)


def hsolve(h, y, m, r, n, backend=None):
    """Solve against a column Hermite basis; see :func:`stronghom._pykernels.hsolve`."""
    if backend is None:
        backend = BACKEND
    if backend == "native" and _native is not None:
        try:
            return _native.hsolve(h, y, m, r, n)
        except OverflowError:
            pass
    return _pykernels.hsolve(h, y, m, r, n)


def matmul(a, b, m, k, n, backend=None):
    if backend is None:
        backend = BACKEND
    if backend == "native" and _native is not None:
        try:
            return _native.matmul(a, b, m, k, n)
        except OverflowError:
            pass
    return _pykernels.matmul(a, b, m, k, n)
