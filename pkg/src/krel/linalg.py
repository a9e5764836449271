"""Elimination routines shared by both arithmetic modes.

Matrices are numpy arrays: ``object`` arrays of :class:`~krel.scalars.Gaussian`
in exact mode, ``complex128`` in float mode.  All routines take the
:class:`~krel.scalars.Arithmetic` explicitly.
"""
from __future__ import annotations

import numpy as np

from .scalars import ONE, ZERO, Arithmetic

__all__ = [
    "rref",
    "column_echelon",
    "nullspace",
    "rank",
    "inverse",
    "solve",
    "hermitian",
    "block_diag",
    "ctranspose",
    "inertia",
    "congruence_diagonalize",
]


def ctranspose(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose, for either mode."""
    return np.conjugate(a).T


def block_diag(ar: Arithmetic, *mats: np.ndarray) -> np.ndarray:
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = ar.zeros(rows, cols)
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def hermitian(ar: Arithmetic, a: np.ndarray) -> bool:
    return a.shape[0] == a.shape[1] and ar.equal(a, ctranspose(a))


def _pivot_row(ar: Arithmetic, m: np.ndarray, col: int, start: int):
    if ar.exact:
        for i in range(start, m.shape[0]):
            if m[i, col]:
                return i
        return None
    if start >= m.shape[0]:
        return None
    mags = np.abs(m[start:, col])
    k = int(np.argmax(mags))
    if mags[k] <= ar.eps:
        return None
    return start + k


def rref(ar: Arithmetic, a: np.ndarray):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots`` lists their leading columns.  The result is unique for the row
    space, which is what makes canonical subspace bases comparable.
    """
    m = np.array(a, dtype=ar.dtype, copy=True)
    nrows, ncols = m.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = _pivot_row(ar, m, c, r)
        if p is None:
            if not ar.exact:
                m[r:, c] = 0
            continue
        if p != r:
            m[[r, p]] = m[[p, r]]
        piv = m[r, c]
        if ar.exact:
            if piv != ONE:
                inv = ONE / piv
                m[r, c:] = m[r, c:] * inv
        else:
            m[r, c:] = m[r, c:] / piv
        row = m[r, c:]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i, c]
            if ar.exact:
                if f:
                    m[i, c:] = m[i, c:] - f * row
            elif f != 0:
                m[i, c:] = m[i, c:] - f * row
                m[i, c] = 0
        pivots.append(c)
        r += 1
    out = m[:r]
    if not ar.exact and out.size:
        out[np.abs(out) <= ar.eps] = 0
    return out, pivots


def column_echelon(ar: Arithmetic, b: np.ndarray):
    """Canonical basis of the column span of ``b``.

    Reduced column-echelon form: pivot rows chosen top-down, pivot entries 1,
    all other entries in a pivot row 0.  Returns ``(basis, pivot_rows)``.
    """
    n = b.shape[0]
    if b.shape[1] == 0:
        return ar.zeros(n, 0), ()
    r, piv = rref(ar, b.T)
    return np.ascontiguousarray(r.T), tuple(piv)


def nullspace(ar: Arithmetic, a: np.ndarray) -> np.ndarray:
    """Basis (as columns) of ``{x : a x = 0}``."""
    nrows, ncols = a.shape
    if nrows == 0:
        return ar.eye(ncols)
    r, piv = rref(ar, a)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = ar.zeros(ncols, len(free))
    one = ONE if ar.exact else 1.0
    for j, c in enumerate(free):
        out[c, j] = one
        for i, p in enumerate(piv):
            v = r[i, c]
            if ar.exact:
                if v:
                    out[p, j] = -v
            else:
                out[p, j] = -v
    return out


def rank(ar: Arithmetic, a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(ar, a)[1])


def inverse(ar: Arithmetic, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([a.astype(ar.dtype), ar.eye(n)], axis=1)
    r, piv = rref(ar, aug)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return np.ascontiguousarray(r[:, n:])


def solve(ar: Arithmetic, a: np.ndarray, b: np.ndarray):
    """One solution ``x`` of ``a x = b`` or ``None`` if inconsistent."""
    nrows, ncols = a.shape
    aug = np.concatenate([a.astype(ar.dtype), b.astype(ar.dtype)], axis=1)
    r, piv = rref(ar, aug)
    if any(p >= ncols for p in piv):
        return None
    x = ar.zeros(ncols, b.shape[1])
    for i, p in enumerate(piv):
        x[p] = r[i, ncols:]
    return x


def congruence_diagonalize(ar: Arithmetic, g: np.ndarray):
    """Exact congruence ``P^H g P = diag(d)`` for a Hermitian ``g``.

    Symmetric Gaussian elimination; a zero diagonal with a nonzero
    off-diagonal entry ``g[k, j]`` is repaired by the shear
    ``e_k <- e_k + t e_j`` with ``t`` chosen so ``2 Re(t g[j, k]) != 0``.
    Returns ``(P, d)`` with real diagonal ``d``.
    """
    n = g.shape[0]
    m = np.array(g, dtype=ar.dtype, copy=True)
    p = ar.eye(n)
    one = ONE if ar.exact else 1.0
    zero = ZERO if ar.exact else 0.0
    d = []
    for k in range(n):
        if ar.is_zero(m[k, k]):
            j = next((j for j in range(k + 1, n) if not ar.is_zero(m[j, k])), None)
            if j is not None:
                t = one / m[k, j]
                if ar.is_zero(_shear_value(m, k, j, t)):
                    t = -t
                m[:, k] = m[:, k] + m[:, j] * t
                m[k, :] = m[k, :] + m[j, :] * np.conjugate(t)
                p[:, k] = p[:, k] + p[:, j] * t
        piv = m[k, k]
        if ar.is_zero(piv):
            d.append(zero)
            continue
        for j in range(k + 1, n):
            f = m[j, k]
            if ar.is_zero(f):
                continue
            c = f / piv
            cc = np.conjugate(c)
            m[:, j] = m[:, j] - m[:, k] * cc
            m[j, :] = m[j, :] - m[k, :] * c
            p[:, j] = p[:, j] - p[:, k] * cc
        d.append(piv)
    return p, d


def _shear_value(m, k, j, t):
    tc = np.conjugate(t)
    return m[k, k] + t * m[k, j] + tc * m[j, k] + t * tc * m[j, j]


def inertia(ar: Arithmetic, g: np.ndarray):
    """``(positive, negative, zero)`` counts of a Hermitian matrix.

    Exact mode uses congruence diagonalization (Sylvester's law of inertia);
    float mode uses eigenvalue signs with tolerance ``eps``.
    """
    n = g.shape[0]
    if n == 0:
        return 0, 0, 0
    if ar.exact:
        _, d = congruence_diagonalize(ar, g)
        pos = sum(1 for x in d if x and x.re > 0)
        neg = sum(1 for x in d if x and x.re < 0)
        return pos, neg, n - pos - neg
    w = np.linalg.eigvalsh(0.5 * (g + ctranspose(g)))
    pos = int(np.sum(w > ar.eps))
    neg = int(np.sum(w < -ar.eps))
    return pos, neg, n - pos - neg
