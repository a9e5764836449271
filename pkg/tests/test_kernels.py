import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from krel import _kernels

needs_numba = pytest.mark.skipif(not _kernels.numba_available(), reason="numba unavailable")


def _rand(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


@needs_numba
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4), st.integers(0, 2))
def test_pencil_backends_agree(seed, k, extra):
    rng = np.random.default_rng(seed)
    f, fp = _rand(rng, k + extra, k), _rand(rng, k + extra, k)
    zs = _rand(rng, 7)
    a = _kernels.pencil_abs_det(f, fp, zs, "numba")
    b = _kernels.pencil_abs_det(f, fp, zs, "numpy")
    np.testing.assert_allclose(a, b, rtol=1e-9, atol=1e-12)


@needs_numba
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3), st.integers(1, 4))
def test_kernel_backends_agree(seed, m, p):
    rng = np.random.default_rng(seed)
    mats = _rand(rng, p, m, m)
    zs = rng.normal(size=p) + 1j * (1 + rng.random(p))
    gram = np.eye(m, dtype=complex)
    a = _kernels.nevanlinna_kernel(mats, zs, gram, "numba")
    b = _kernels.nevanlinna_kernel(mats, zs, gram, "numpy")
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


def test_pencil_values():
    f = np.eye(2)
    fp = np.diag([1.0, 2.0])
    out = _kernels.pencil_abs_det(f, fp, [0, 1, 3j], "numpy")
    np.testing.assert_allclose(out, [2, 0, abs((1 - 3j) * (2 - 3j))])


def test_pencil_edge_shapes():
    assert np.all(_kernels.pencil_abs_det(np.zeros((2, 0)), np.zeros((2, 0)), [1j]) == 1)
    assert np.all(_kernels.pencil_abs_det(np.zeros((1, 2)), np.zeros((1, 2)), [1j]) == 0)


def test_kernel_of_identity_weyl_function():
    zs = np.array([1j, 2j])
    out = _kernels.nevanlinna_kernel(zs.reshape(2, 1, 1), zs, np.eye(1), "numpy")
    # (z_i - conj z_j) / (z_i - conj z_j) = 1
    np.testing.assert_allclose(out, np.ones((2, 2)))
    assert _kernels.nevanlinna_kernel(np.zeros((0, 1, 1)), [], np.eye(1)).shape == (0, 0)


def test_environment_switch(monkeypatch):
    monkeypatch.setenv("KREL_NUMBA", "0")
    assert _kernels.backend() == "numpy"
    monkeypatch.setenv("KREL_NUMBA", "1")
    assert _kernels.backend() == ("numba" if _kernels.numba_available() else "numpy")
