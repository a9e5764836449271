"""Finite eigenvalues of a rectangular pencil ``(F', F)`` in float arithmetic."""
from __future__ import annotations

import numpy as np
import scipy.linalg

# Fixed stream: the projections below must not make results seed-dependent.
_PROBE_SEED = 0x6B72656C


def _smin(a: np.ndarray) -> float:
    if a.shape[1] == 0:
        return np.inf
    return float(np.linalg.svd(a, compute_uv=False)[-1])


def _scale(f: np.ndarray, fp: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(f, 2)), float(np.linalg.norm(fp, 2)))


def is_degenerate(f: np.ndarray, fp: np.ndarray, eps: float) -> bool:
    """``F' - zF`` has a nontrivial kernel for every ``z``."""
    n, k = f.shape
    if k == 0:
        return False
    if k > n:
        return True
    rng = np.random.default_rng(_PROBE_SEED)
    tol = max(eps, 1e-9) * _scale(f, fp) * 10
    for _ in range(2):
        z = complex(*rng.normal(size=2))
        if _smin(fp - z * f) > tol:
            return False
    return True


def _cluster(values, tol):
    out: list[complex] = []
    for v in sorted(values, key=lambda c: (c.real, c.imag)):
        if not any(abs(v - w) <= tol for w in out):
            out.append(v)
    return out


def pencil_eigenvalues(f: np.ndarray, fp: np.ndarray, eps: float = 1e-9):
    """``(values, degenerate)`` for the pencil of an ``n x k`` graph basis.

    Square pencils go straight to the generalized eigenproblem.  Tall ones
    are compressed by two random left projections; a candidate is kept when
    the original pencil's smallest singular value vanishes there.
    """
    n, k = f.shape
    if is_degenerate(f, fp, eps):
        return [], True
    if k == 0:
        return [], False
    scale = _scale(f, fp)
    accept = 1e-6 * scale
    if n == k:
        cands = [scipy.linalg.eigvals(fp, f, homogeneous_eigvals=True)]
    else:
        rng = np.random.default_rng(_PROBE_SEED)
        cands = []
        for _ in range(2):
            w = rng.normal(size=(k, n)) + 1j * rng.normal(size=(k, n))
            cands.append(scipy.linalg.eigvals(w @ fp, w @ f, homogeneous_eigvals=True))
    found = []
    for ab in cands:
        alpha, beta = ab
        for a, b in zip(alpha, beta):
            if abs(b) <= 1e-12 * max(1.0, abs(a)):
                continue
            z = complex(a / b)
            if _smin(fp - z * f) <= accept * max(1.0, abs(z)):
                found.append(z)
    return _cluster(found, max(eps, 1e-7) * max(1.0, scale)), False
