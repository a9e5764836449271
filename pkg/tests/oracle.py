"""Independent reference computations in sympy.

Nothing here imports the package's linear algebra.  Inputs may be numpy object
arrays of package scalars; they are converted to exact sympy matrices first.
"""
from __future__ import annotations

import numpy as np
import sympy as sp
from sympy import QQ_I
from sympy.polys.matrices import DomainMatrix


def to_sym(a) -> sp.Matrix:
    if isinstance(a, sp.MatrixBase):
        return sp.Matrix(a)
    a = np.asarray(a, dtype=object)
    if a.ndim == 1:
        a = a.reshape(-1, 1)

    def conv(x):
        if isinstance(x, (sp.Basic, int)):
            return sp.sympify(x)
        if isinstance(x, str):
            return sp.sympify(x.replace("*i", "*I"))
        re, im = getattr(x, "re", x), getattr(x, "im", 0)
        return sp.Rational(str(re)) + sp.I * sp.Rational(str(im))

    return sp.Matrix(a.shape[0], a.shape[1], lambda i, j: conv(a[i, j]))


def H(m: sp.Matrix) -> sp.Matrix:
    return m.conjugate().T.applyfunc(sp.expand)


def _dm(m: sp.Matrix) -> DomainMatrix:
    return DomainMatrix.from_Matrix(m.applyfunc(sp.expand)).convert_to(QQ_I)


def inner(g, x, y):
    g, x, y = to_sym(g), to_sym(x), to_sym(y)
    return sp.nsimplify(sp.expand((H(y) * g * x)[0, 0]))


def inertia(g) -> tuple[int, int]:
    """Descartes' rule on the characteristic polynomial.

    A Hermitian matrix has a real-rooted characteristic polynomial, so the sign
    changes of its coefficients count positive roots exactly.
    """
    g = to_sym(g)
    coeffs = [QQ_I.to_sympy(c) for c in _dm(g).charpoly()]
    assert all(sp.im(c) == 0 for c in coeffs)

    def changes(cs):
        signs = [sp.sign(c) for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = changes(coeffs)
    n = len(coeffs) - 1
    neg = changes([c * (-1) ** (n - k) for k, c in enumerate(coeffs)])
    return pos, neg


def rank(m: sp.Matrix) -> int:
    return 0 if 0 in m.shape else _dm(m).rank()


def same_span(a: sp.Matrix, b: sp.Matrix) -> bool:
    ra, rb = rank(a), rank(b)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(a.row_join(b)) == ra


def contains(big: sp.Matrix, small: sp.Matrix) -> bool:
    if 0 in small.shape or rank(small) == 0:
        return True
    if 0 in big.shape:
        return False
    return rank(big.row_join(small)) == rank(big)


def nullspace(m: sp.Matrix, n: int) -> sp.Matrix:
    if m.rows == 0:
        return sp.eye(n)
    ns = _dm(m).nullspace().to_Matrix()
    return ns.T if ns.rows else sp.zeros(n, 0)


def companion(g, a) -> sp.Matrix:
    """``{y : [x, y] = 0 for x in span(a)}``."""
    g, a = to_sym(g), to_sym(a)
    return nullspace(H(a) * H(g), g.rows) if a.cols else sp.eye(g.rows)


def is_neutral(g, a) -> bool:
    g, a = to_sym(g), to_sym(a)
    return a.cols == 0 or (H(a) * g * a).applyfunc(sp.expand) == sp.zeros(a.cols, a.cols)


def is_hyper_maximal(g, a) -> bool:
    return is_neutral(g, a) and rank(companion(g, a)) == rank(to_sym(a))


def adjoint(gx, gy, graph) -> sp.Matrix:
    """Adjoint graph in ``Y x X`` by solving ``[f', g]_Y = [f, g']_X`` for every graph column."""
    gx, gy, graph = to_sym(gx), to_sym(gy), to_sym(graph)
    n, m = gx.rows, gy.rows
    f, fp = graph[:n, :], graph[n:, :]
    if graph.cols == 0:
        return sp.eye(m + n)
    system = (H(fp) * gy).row_join(-H(f) * gx)
    return nullspace(system, m + n)


def green_defect(gk, gh, graph) -> sp.Matrix:
    """Matrix of ``[f', g] - [f, g'] - ((h', k) - (h, k'))`` over graph column pairs."""
    gk, gh, graph = to_sym(gk), to_sym(gh), to_sym(graph)
    n, m = gk.rows, gh.rows
    f, fp, h, hp = graph[:n, :], graph[n:2 * n, :], graph[2 * n:2 * n + m, :], graph[2 * n + m:, :]
    return (H(f) * gk * fp - H(fp) * gk * f - H(h) * gh * hp + H(hp) * gh * h).applyfunc(sp.expand)


def kernel_negative_count(values: list, points: list) -> int:
    """Negative eigenvalues of the Nevanlinna kernel of scalar values ``M(z_k)``."""
    k = sp.Matrix(len(points), len(points),
                  lambda i, j: (values[i] - sp.conjugate(values[j])) / (points[i] - sp.conjugate(points[j])))
    return inertia(k.applyfunc(sp.radsimp))[1]


def fmt(z) -> str:
    """Canonical ``a/b+c/d*i`` text for an exact sympy number."""
    z = sp.expand(z)
    re, im = sp.re(z), sp.im(z)
    sign = "-" if im < 0 else "+"
    return f"{re}{sign}{abs(im)}*i"


# boundary relations ---------------------------------------------------------

def doubled_gram(g) -> sp.Matrix:
    g = to_sym(g)
    n = g.rows
    return sp.zeros(n, n).row_join(-sp.I * g).col_join((sp.I * g).row_join(sp.zeros(n, n)))


def _cols_with_zero_rows(graph: sp.Matrix, rows: slice) -> sp.Matrix:
    """Graph combinations whose entries in ``rows`` vanish."""
    block = graph[rows, :]
    coeff = nullspace(block, graph.cols)
    return graph * coeff if coeff.cols else sp.zeros(graph.rows, 0)


def boundary_flags(gk, gh, graph) -> dict:
    """All classification flags of a boundary relation computed from their definitions."""
    gk, gh, graph = to_sym(gk), to_sym(gh), to_sym(graph)
    n, m = gk.rows, gh.rows
    g2k, g2h = doubled_gram(gk), doubled_gram(gh)
    fhat, hhat = graph[:2 * n, :], graph[2 * n:, :]
    greens = green_defect(gk, gh, graph) == sp.zeros(graph.cols, graph.cols)

    dom = fhat
    dom_adj = adjoint(gk, gk, dom)
    cond222 = contains(dom, dom_adj)

    adj = adjoint(g2k, g2h, graph)
    inv = hhat.col_join(fhat)
    unitary = same_span(adj, inv)

    ran_full = rank(hhat) == 2 * m
    ran0_full = rank(graph[2 * n:2 * n + m, :]) == m

    # ker Gamma_0: f-hat part of graph elements with h = 0
    k0 = _cols_with_zero_rows(graph, slice(2 * n, 2 * n + m))[:2 * n, :]
    k0_sa = same_span(adjoint(gk, gk, k0), k0)
    k0_op = rank(k0) == rank(k0[:n, :])

    ker = _cols_with_zero_rows(graph, slice(2 * n, 2 * n + 2 * m))
    mul = _cols_with_zero_rows(graph, slice(0, 2 * n))
    trivial = rank(graph) == rank(ker) + rank(mul)

    return {
        "greens": greens,
        "isometricBoundary": cond222,
        "unitaryBoundary": unitary,
        "ordinaryTriple": ran_full and cond222,
        "abGeneralized": cond222 and ran0_full and k0_sa,
        "bGeneralized": cond222 and ran0_full and k0_sa,
        "quasiBoundary": cond222 and ran_full and k0_sa and k0_op,
        "sGeneralized": unitary and k0_sa and k0_op,
        "trivial": trivial,
    }


def weyl_matrix(gk, gh, graph, z):
    """Matrix of ``M(z)`` or ``None`` when the Weyl value is not an everywhere defined operator."""
    gk, graph = to_sym(gk), to_sym(graph)
    n, m = gk.rows, to_sym(gh).rows
    z = sp.sympify(z)
    f, fp = graph[:n, :], graph[n:2 * n, :]
    coeff = nullspace(fp - z * f, graph.cols)
    img = graph[2 * n:, :] * coeff if coeff.cols else sp.zeros(2 * m, 0)
    h, hp = img[:m, :], img[m:, :]
    if rank(h) != m or rank(img) != rank(h):
        return None
    # choose m independent columns of h
    piv = h.rref()[1]
    cols = list(piv)[:m]
    hs, hps = h.extract(list(range(m)), cols), hp.extract(list(range(m)), cols)
    return (hps * hs.inv()).applyfunc(sp.radsimp)
