"""The compiled and pure-Python kernels agree and overflow falls back cleanly."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from stronghom import _pykernels, kernels

native = pytest.mark.skipif(not kernels.native_available(), reason="native extension not built")


@st.composite
def rows(draw, bound=50):
    m = draw(st.integers(0, 6))
    n = draw(st.integers(0, 6))
    data = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=m, max_size=m))
    return data, m, n


@native
@given(rows())
def test_snf_parity(r):
    data, m, n = r
    assert kernels.snf(data, m, n, backend="native") == _pykernels.snf(data, m, n)


@native
@given(rows())
def test_hnf_parity(r):
    data, m, n = r
    assert kernels.hnf(data, m, n, backend="native") == _pykernels.hnf(data, m, n)


@native
@given(rows(), st.integers(0, 5))
def test_matmul_parity(r, k):
    a, m, n = r
    b = [[(i * 7 + j * 3) % 11 - 5 for j in range(k)] for i in range(n)]
    assert kernels.matmul(a, b, m, n, k, backend="native") == _pykernels.matmul(a, b, m, n, k)


def test_overflow_falls_back():
    big = 2 ** 70
    data = [[big, 3], [5, big + 1]]
    U, Ui, D, V = kernels.snf(data, 2, 2)
    assert D == _pykernels.snf(data, 2, 2)[2]
    assert kernels.hnf(data, 2, 2) == _pykernels.hnf(data, 2, 2)
    assert kernels.matmul(data, data, 2, 2, 2) == _pykernels.matmul(data, data, 2, 2, 2)


def test_pure_python_switch():
    env = dict(os.environ, STRONGHOM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from stronghom import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@native
@given(rows(bound=9), st.data())
def test_hsolve_parity(r, data):
    from stronghom.algebra import hermite_basis
    from stronghom.matrix import IntMatrix
    a, m, n = r
    if not m:
        return
    H = hermite_basis(IntMatrix(a, (m, n)))
    if not H.ncols:
        return
    k = data.draw(st.integers(1, 3))
    coeffs = [[data.draw(st.integers(-4, 4)) for _ in range(k)] for _ in range(H.ncols)]
    Y = H @ IntMatrix(coeffs, (H.ncols, k))
    if data.draw(st.booleans()):
        # perturb, so some right-hand sides have no solution
        Y = Y + IntMatrix([[data.draw(st.integers(-1, 1)) for _ in range(k)] for _ in range(m)], (m, k))
    got = kernels.hsolve(H.rows, Y.rows, m, H.ncols, k, backend="native")
    assert got == _pykernels.hsolve(H.rows, Y.rows, m, H.ncols, k)
    if got is not None:
        assert H @ IntMatrix(got, (H.ncols, k)) == Y


@native
def test_hnf_retries_in_128_bits():
    from stronghom import _native
    t = 2 ** 62
    # eliminating the first row multiplies 2^62 by 2, past int64; the result still fits
    data = [[t, t + 1], [t, t + 2]]
    assert _native.hnf(data, 2, 2) == _pykernels.hnf(data, 2, 2) == [[1, 2], [0, t]]
