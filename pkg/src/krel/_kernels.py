"""Float kernels with an optional numba backend.

Two loops dominate float-mode work: scanning ``|det|`` of a pencil
``F' - zF`` over a grid of points, and assembling the block Nevanlinna
kernel of a Weyl function.  Both have a numba ``@njit`` implementation and a
batched numpy one.  ``KREL_NUMBA=0`` forces numpy; otherwise numba is used
when it imports.  Exact arithmetic never goes through this module.
"""
from __future__ import annotations

import os

import numpy as np

__all__ = ["backend", "pencil_abs_det", "nevanlinna_kernel", "numba_available"]

_NUMBA = None


def _load_numba():
    global _NUMBA
    if _NUMBA is None:
        try:
            import numba  # noqa: F401
        except ImportError:  # pragma: no cover - numba is a declared dependency
            _NUMBA = False
        else:
            _NUMBA = _compile()
    return _NUMBA


def numba_available() -> bool:
    return bool(_load_numba())


def backend() -> str:
    """``"numba"`` or ``"numpy"`` according to ``KREL_NUMBA`` and availability."""
    flag = os.environ.get("KREL_NUMBA", "1").strip().lower()
    if flag in ("0", "false", "no", "off"):
        return "numpy"
    return "numba" if numba_available() else "numpy"


def _compile():
    from numba import njit

    @njit(cache=True)
    def abs_det_lu(a):
        # |det a| by Gaussian elimination with partial pivoting, in place
        n = a.shape[0]
        out = 1.0
        for c in range(n):
            p = c
            best = abs(a[c, c])
            for r in range(c + 1, n):
                v = abs(a[r, c])
                if v > best:
                    best, p = v, r
            if best == 0.0:
                return 0.0
            if p != c:
                for j in range(c, n):
                    a[c, j], a[p, j] = a[p, j], a[c, j]
            piv = a[c, c]
            out *= best
            for r in range(c + 1, n):
                fac = a[r, c] / piv
                for j in range(c + 1, n):
                    a[r, j] -= fac * a[c, j]
        return out

    @njit(cache=True)
    def pencil_abs_det_nb(f, fp, zs):
        n, k = f.shape
        out = np.empty(zs.shape[0])
        a = np.empty((n, k), dtype=np.complex128)
        gram = np.empty((k, k), dtype=np.complex128)
        for t in range(zs.shape[0]):
            z = zs[t]
            for i in range(n):
                for j in range(k):
                    a[i, j] = fp[i, j] - z * f[i, j]
            if n == k:
                out[t] = abs_det_lu(a)
            else:
                # product of singular values = sqrt(det(A^H A))
                for i in range(k):
                    for j in range(k):
                        acc = 0j
                        for r in range(n):
                            acc += np.conj(a[r, i]) * a[r, j]
                        gram[i, j] = acc
                out[t] = np.sqrt(abs_det_lu(gram))
        return out

    @njit(cache=True)
    def nevanlinna_kernel_nb(mats, zs, gram):
        p = zs.shape[0]
        m = gram.shape[0]
        out = np.empty((p * m, p * m), dtype=np.complex128)
        left = np.empty((p, m, m), dtype=np.complex128)
        for i in range(p):
            left[i] = gram @ mats[i]
        for i in range(p):
            for j in range(p):
                d = zs[i] - np.conj(zs[j])
                blk = (left[i] - np.conj(left[j]).T) / d
                out[i * m:(i + 1) * m, j * m:(j + 1) * m] = blk
        return out

    return {"pencil": pencil_abs_det_nb, "kernel": nevanlinna_kernel_nb}


def _pencil_numpy(f, fp, zs):
    n, k = f.shape
    stack = fp[None, :, :] - zs[:, None, None] * f[None, :, :]
    if n == k:
        return np.abs(np.linalg.det(stack))
    return np.prod(np.linalg.svd(stack, compute_uv=False), axis=1)


def _kernel_numpy(mats, zs, gram):
    p, m, _ = mats.shape
    left = gram[None] @ mats
    num = left[:, None] - np.conj(np.swapaxes(left, 1, 2))[None, :]
    den = zs[:, None] - np.conj(zs)[None, :]
    blocks = num / den[:, :, None, None]
    return blocks.transpose(0, 2, 1, 3).reshape(p * m, p * m)


def pencil_abs_det(f: np.ndarray, fp: np.ndarray, zs, which: str | None = None) -> np.ndarray:
    """``prod sigma_j(F' - zF)`` for every ``z`` in ``zs``.

    For a square pencil this is ``|det(F' - zF)|``; for an ``n x k`` pencil
    with ``n > k`` it is ``sqrt(det(A^H A))``, which vanishes exactly where the
    pencil drops column rank.
    """
    f = np.ascontiguousarray(f, dtype=np.complex128)
    fp = np.ascontiguousarray(fp, dtype=np.complex128)
    zs = np.ascontiguousarray(np.atleast_1d(np.asarray(zs, dtype=np.complex128)))
    if f.shape[1] == 0:
        return np.ones(zs.shape[0])
    if f.shape[1] > f.shape[0]:
        return np.zeros(zs.shape[0])
    if (which or backend()) == "numba":
        return _load_numba()["pencil"](f, fp, zs)
    return _pencil_numpy(f, fp, zs)


def nevanlinna_kernel(mats, zs, gram, which: str | None = None) -> np.ndarray:
    """Block matrix with blocks ``(G M_i - M_j^H G) / (z_i - conj(z_j))``.

    ``mats`` stacks the Weyl matrices ``M(z_i)`` (``p x m x m``), ``gram`` is
    the Gram matrix of the boundary space.
    """
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    zs = np.ascontiguousarray(np.asarray(zs, dtype=np.complex128))
    gram = np.ascontiguousarray(gram, dtype=np.complex128)
    if mats.shape[0] == 0 or gram.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    if (which or backend()) == "numba":
        return _load_numba()["kernel"](mats, zs, gram)
    return _kernel_numpy(mats, zs, gram)
