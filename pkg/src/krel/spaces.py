"""Finite-dimensional Krein spaces and their subspace lattice.

A :class:`KreinSpace` is a Hermitian invertible Gram matrix ``G`` with the
form ``[x, y] = y^H G x`` (linear in the first slot, conjugate-linear in the
second).  A :class:`Subspace` stores its basis in reduced column-echelon
form, so equal subspaces have identical bases in exact mode.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg as la
from .errors import (
    AmbientMismatch,
    DegenerateForm,
    DimensionMismatch,
    NoRationalFrame,
    NotHermitian,
    NotHilbert,
)
from .scalars import EXACT, I, ONE, Arithmetic, Gaussian, default_arithmetic

__all__ = [
    "KreinSpace",
    "Subspace",
    "Frame",
    "SubspaceClass",
    "krein_space",
    "hilbert_space",
    "inner_product",
    "negative_index",
    "positive_index",
    "doubled_space",
    "product_space",
    "orthogonal_sum",
    "graph_side_space",
    "orthogonal_companion",
    "isotropic_part",
    "classify_subspace",
    "intersect",
    "subspace_sum",
    "contains",
    "span",
    "zero_subspace",
    "full_subspace",
    "frame_of",
]


@dataclass(frozen=True)
class Frame:
    """Congruence certificate: ``C^H G C = diag(I_pos, -I_neg)``."""

    matrix: np.ndarray
    pos: int
    neg: int


@dataclass(frozen=True, eq=False)
class KreinSpace:
    """Finite-dimensional Krein space given by its Gram matrix.

    Spaces compare by identity: two spaces with equal Gram matrices are still
    different spaces (this models disjointness of the component spaces in a
    direct orthogonal sum).
    """

    gram: np.ndarray
    label: str = ""
    arithmetic: Arithmetic = EXACT
    _frame: Frame | None = field(default=None, repr=False)

    def __post_init__(self):
        g = self.gram
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise DimensionMismatch("Gram matrix must be square", shape=list(g.shape))
        if not la.hermitian(self.arithmetic, g):
            raise NotHermitian("Gram matrix is not Hermitian", label=self.label)
        if g.shape[0]:
            if self.arithmetic.exact:
                if la.rank(self.arithmetic, g) < g.shape[0]:
                    raise DegenerateForm("Gram matrix is singular", label=self.label)
            else:
                smin = np.linalg.svd(g, compute_uv=False).min()
                if smin <= self.arithmetic.eps:
                    raise DegenerateForm("Gram matrix is numerically singular", label=self.label,
                                         smallest_singular_value=float(smin))
        g.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @cached_property
    def signature(self) -> tuple[int, int]:
        """``(positive index, negative index)``."""
        if self._frame is not None:
            return self._frame.pos, self._frame.neg
        pos, neg, _ = la.inertia(self.arithmetic, self.gram)
        return pos, neg

    @property
    def is_hilbert(self) -> bool:
        return self.signature[1] == 0

    def vector(self, data) -> np.ndarray:
        v = self.arithmetic.array(data).reshape(-1)
        if v.shape[0] != self.dim:
            raise DimensionMismatch("vector length does not match the space", expected=self.dim,
                                    got=int(v.shape[0]))
        return v

    @classmethod
    def _trusted(cls, gram: np.ndarray, label: str, arithmetic: Arithmetic, frame: Frame | None):
        """Skip validation for Gram matrices that are invertible and Hermitian by construction."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "gram", gram)
        object.__setattr__(obj, "label", label)
        object.__setattr__(obj, "arithmetic", arithmetic)
        object.__setattr__(obj, "_frame", frame)
        gram.setflags(write=False)
        return obj

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"<KreinSpace{name} dim={self.dim} signature={self.signature} {self.arithmetic.name}>"


def krein_space(gram, label: str = "", arithmetic: Arithmetic | None = None, frame: Frame | None = None) -> KreinSpace:
    """Build a space from nested Gram data (strings, ints, fractions or complex)."""
    ar = arithmetic or default_arithmetic()
    g = ar.array(gram)
    if g.ndim == 1 and g.size == 0:
        g = ar.zeros(0, 0)
    return KreinSpace(g, label, ar, frame)


def hilbert_space(dim: int, label: str = "", arithmetic: Arithmetic | None = None) -> KreinSpace:
    ar = arithmetic or default_arithmetic()
    e = ar.eye(dim)
    return KreinSpace(e, label, ar, Frame(ar.eye(dim), dim, 0))


def inner_product(space: KreinSpace, x, y):
    """``[x, y] = y^H G x``."""
    x = np.asarray(x).reshape(-1)
    y = np.asarray(y).reshape(-1)
    if x.shape[0] != space.dim or y.shape[0] != space.dim:
        raise DimensionMismatch("vector length does not match the space", expected=space.dim,
                                got=[int(x.shape[0]), int(y.shape[0])])
    ar = space.arithmetic
    x = ar.convert(x)
    y = ar.convert(y)
    return np.conjugate(y) @ (space.gram @ x) if space.dim else ar.scalar(0)


def negative_index(space: KreinSpace) -> int:
    return space.signature[1]


def positive_index(space: KreinSpace) -> int:
    return space.signature[0]


def _block(ar: Arithmetic, rows) -> np.ndarray:
    return np.block(rows).astype(ar.dtype) if rows else ar.zeros(0, 0)


def doubled_space(space: KreinSpace, label: str | None = None) -> KreinSpace:
    """The space of pairs ``(f, f')`` with Gram ``[[0, -iG], [iG, 0]]``.

    The attached frame comes from ``diag(I, i G^{-1})``, which brings the Gram
    to the hyperbolic form ``[[0, I], [I, 0]]``, followed by the rational
    change of basis ``e_j +- e_{n+j}/2``.
    """
    if label is None and "_doubled" in space.__dict__:
        return space.__dict__["_doubled"]
    ar = space.arithmetic
    n = space.dim
    g = space.gram
    i = I if ar.exact else 1j
    z = ar.zeros(n, n)
    gram = _block(ar, [[z, g * (-i)], [g * i, z]]) if n else ar.zeros(0, 0)
    if n:
        ginv = la.inverse(ar, g)
        eye = ar.eye(n)
        half = ONE / 2 if ar.exact else 0.5
        hyper = _block(ar, [[eye, z], [z, ginv * i]])
        shuffle = _block(ar, [[eye, eye], [eye * half, eye * (-half)]])
        frame = Frame(hyper @ shuffle, n, n)
    else:
        frame = Frame(ar.zeros(0, 0), 0, 0)
    lab = label if label is not None else (f"{space.label}^2" if space.label else "")
    out = KreinSpace._trusted(gram, lab, ar, frame)
    if label is None:
        space.__dict__["_doubled"] = out
    return out


def _perm_frame(ar: Arithmetic, c: np.ndarray, signs: list[int]) -> Frame:
    order = [k for k, s in enumerate(signs) if s > 0] + [k for k, s in enumerate(signs) if s < 0]
    pos = sum(1 for s in signs if s > 0)
    return Frame(c[:, order] if c.size else c, pos, len(signs) - pos)


def _frame_signs(fr: Frame) -> list[int]:
    return [1] * fr.pos + [-1] * fr.neg


def _direct_frame(ar, fx: Frame | None, fy: Frame | None, flip_second: bool) -> Frame | None:
    if fx is None or fy is None:
        return None
    c = la.block_diag(ar, fx.matrix, fy.matrix)
    sy = _frame_signs(fy)
    if flip_second:
        sy = [-s for s in sy]
    return _perm_frame(ar, c, _frame_signs(fx) + sy)


def _same_mode(x: KreinSpace, y: KreinSpace) -> Arithmetic:
    if x.arithmetic != y.arithmetic:
        raise AmbientMismatch("spaces use different arithmetic modes")
    return x.arithmetic


def product_space(x: KreinSpace, y: KreinSpace, label: str | None = None) -> KreinSpace:
    """``X x Y`` with ``[.,.]_X - [.,.]_Y`` (Gram ``diag(G_X, -G_Y)``)."""
    cache = x.__dict__.setdefault("_products", {})
    hit = cache.get(id(y))
    if label is None and hit is not None and hit[0] is y:
        return hit[1]
    ar = _same_mode(x, y)
    gram = la.block_diag(ar, x.gram, -y.gram if y.dim else y.gram)
    fr = _direct_frame(ar, x._frame, y._frame, flip_second=True)
    lab = label if label is not None else (f"{x.label}x{y.label}" if x.label or y.label else "")
    out = KreinSpace._trusted(gram, lab, ar, fr)
    if label is None:
        cache[id(y)] = (y, out)
    return out


def orthogonal_sum(k1: KreinSpace, k2: KreinSpace, label: str | None = None) -> KreinSpace:
    """``K1 [+] K2`` with Gram ``diag(G1, G2)``."""
    ar = _same_mode(k1, k2)
    gram = la.block_diag(ar, k1.gram, k2.gram)
    fr = _direct_frame(ar, k1._frame, k2._frame, flip_second=False)
    lab = label if label is not None else (f"{k1.label}[+]{k2.label}" if k1.label or k2.label else "")
    return KreinSpace._trusted(gram, lab, ar, fr)


def graph_side_space(k: KreinSpace, h: KreinSpace, label: str | None = None) -> KreinSpace:
    """``K x H`` with ``[.,.]_K + (.,.)_H``; ``H`` must be positive definite."""
    _same_mode(k, h)
    if negative_index(h) > 0:
        raise NotHilbert("the second space must be positive definite", label=h.label)
    cache = k.__dict__.setdefault("_sides", {})
    hit = cache.get(id(h))
    if label is None and hit is not None and hit[0] is h:
        return hit[1]
    out = orthogonal_sum(k, h, label)
    if label is None:
        cache[id(h)] = (h, out)
    return out


def frame_of(space: KreinSpace) -> Frame:
    """A basis in which the form is ``diag(I, -I)``.

    Constructed spaces carry one.  Otherwise the Gram matrix is diagonalized
    by congruence and each diagonal value ``d`` is normalized with a Gaussian
    rational ``c`` satisfying ``|c|^2 = 1/|d|``; this needs ``|d|`` to be a
    sum of two rational squares, else :class:`NoRationalFrame` is raised.
    """
    if space._frame is not None:
        return space._frame
    ar = space.arithmetic
    if not ar.exact:
        w, v = np.linalg.eigh(space.gram)
        c = v / np.sqrt(np.abs(w))
        return _perm_frame(ar, c, [1 if x > 0 else -1 for x in w])
    p, d = la.congruence_diagonalize(ar, space.gram)
    scales = []
    for val in d:
        q = abs(val.re)
        c = _unit_scale(q)
        if c is None:
            raise NoRationalFrame("no Gaussian-rational normalization for a diagonal value",
                                  value=str(val), label=space.label)
        scales.append(c)
    c = p * np.array(scales, dtype=object)[None, :]
    fr = _perm_frame(ar, c, [1 if val.re > 0 else -1 for val in d])
    object.__setattr__(space, "_frame", fr)
    return fr


def _unit_scale(q) -> Gaussian | None:
    """Gaussian rational ``c`` with ``|c|^2 = 1/q`` for positive rational ``q``."""
    from sympy.solvers.diophantine.diophantine import sum_of_squares

    a, b = int(q.numerator), int(q.denominator)
    n = a * b
    for x, y in sum_of_squares(n, 2, zeros=True):
        return Gaussian(x, y) / a
    return None


# Subspaces ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of an ambient space, stored in canonical form.

    ``basis`` is ``dim x rank`` in reduced column-echelon form; ``pivots`` are
    the pivot rows.  Use :func:`span` to construct from arbitrary vectors.
    """

    ambient: KreinSpace
    basis: np.ndarray
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def arithmetic(self) -> Arithmetic:
        return self.ambient.arithmetic

    def is_zero(self) -> bool:
        return self.rank == 0

    def is_full(self) -> bool:
        return self.rank == self.ambient.dim

    def within(self, space: KreinSpace) -> "Subspace":
        """The same coordinates viewed in another space of equal dimension."""
        if space.dim != self.ambient.dim:
            raise AmbientMismatch("dimension differs", expected=self.ambient.dim, got=space.dim)
        return Subspace(space, self.basis, self.pivots)

    def contains_vector(self, v) -> bool:
        ar = self.arithmetic
        v = ar.convert(np.asarray(v)).reshape(-1)
        if not self.rank:
            return ar.all_zero(v)
        coeff = v[list(self.pivots)]
        return ar.all_zero(v - self.basis @ coeff)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if other.ambient.dim != self.ambient.dim or other.rank != self.rank:
            return False
        if self.arithmetic.exact and other.arithmetic.exact:
            return self.pivots == other.pivots and bool(np.all(self.basis == other.basis))
        return contains(self, other) and contains(other, self)

    __hash__ = None

    def __le__(self, other: "Subspace") -> bool:
        return contains(other, self)

    def __ge__(self, other: "Subspace") -> bool:
        return contains(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __repr__(self):
        return f"<Subspace rank={self.rank} of dim {self.ambient.dim}>"


def span(ambient: KreinSpace, vectors) -> Subspace:
    """Subspace spanned by the columns of ``vectors`` (a ``dim x k`` matrix)."""
    ar = ambient.arithmetic
    if vectors is None:
        return zero_subspace(ambient)
    b = np.asarray(vectors)
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if b.size == 0:
        return zero_subspace(ambient)
    if b.ndim != 2:
        raise DimensionMismatch("vectors must form a matrix", got=list(b.shape))
    b = ar.convert(b) if b.dtype in (object, np.complex128) else ar.array(b)
    if b.shape[0] != ambient.dim:
        raise DimensionMismatch("vectors do not live in the ambient space", expected=ambient.dim,
                                got=int(b.shape[0]))
    basis, piv = la.column_echelon(ar, b)
    return Subspace(ambient, basis, piv)


def zero_subspace(ambient: KreinSpace) -> Subspace:
    return Subspace(ambient, ambient.arithmetic.zeros(ambient.dim, 0), ())


def full_subspace(ambient: KreinSpace) -> Subspace:
    return Subspace(ambient, ambient.arithmetic.eye(ambient.dim), tuple(range(ambient.dim)))


def _check_same(a: Subspace, b: Subspace):
    if a.ambient.dim != b.ambient.dim:
        raise AmbientMismatch("subspaces live in spaces of different dimension",
                              dims=[a.ambient.dim, b.ambient.dim])


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    ar = a.arithmetic
    if a.is_zero() or b.is_zero():
        return zero_subspace(a.ambient)
    if a.is_full():
        return b.within(a.ambient)
    if b.is_full():
        return a
    stacked = np.concatenate([a.basis, -b.basis], axis=1)
    coeff = la.nullspace(ar, stacked)
    if coeff.shape[1] == 0:
        return zero_subspace(a.ambient)
    return span(a.ambient, a.basis @ coeff[: a.rank])


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    if a.is_zero():
        return b.within(a.ambient)
    if b.is_zero():
        return a
    return span(a.ambient, np.concatenate([a.basis, b.basis], axis=1))


def contains(a: Subspace, b: Subspace) -> bool:
    """``b`` is a subset of ``a``."""
    _check_same(a, b)
    if b.rank > a.rank:
        return False
    if b.is_zero() or a.is_full():
        return True
    ar = a.arithmetic
    coeff = b.basis[list(a.pivots)]
    return ar.all_zero(b.basis - a.basis @ coeff)


def gram_of(space: KreinSpace, a: Subspace) -> np.ndarray:
    """Matrix of the form on the basis of ``a``: ``B^H G B``."""
    return la.ctranspose(a.basis) @ space.gram @ a.basis


def orthogonal_companion(space: KreinSpace, a: Subspace) -> Subspace:
    """``A^[perp] = {y : [x, y] = 0 for all x in A}``."""
    if a.ambient.dim != space.dim:
        raise AmbientMismatch("subspace does not live in the space")
    if a.is_zero():
        return full_subspace(space)
    ar = space.arithmetic
    # y^H G x = 0 for all x in A  <=>  B^H G y = 0
    m = la.ctranspose(a.basis) @ space.gram
    ns = la.nullspace(ar, m)
    return span(space, ns) if ns.shape[1] else zero_subspace(space)


def isotropic_part(space: KreinSpace, a: Subspace) -> Subspace:
    """``A`` intersected with ``A^[perp]``."""
    return intersect(a.within(space), orthogonal_companion(space, a))


@dataclass(frozen=True)
class SubspaceClass:
    neutral: bool
    hyperMaximalNeutral: bool
    nonDegenerate: bool

    def as_dict(self) -> dict:
        return {"neutral": self.neutral, "hyperMaximalNeutral": self.hyperMaximalNeutral,
                "nonDegenerate": self.nonDegenerate}


def classify_subspace(space: KreinSpace, a: Subspace) -> SubspaceClass:
    comp = orthogonal_companion(space, a)
    iso = intersect(a.within(space), comp)
    neutral = iso.rank == a.rank
    hyper = neutral and comp.rank == a.rank
    return SubspaceClass(neutral, hyper, iso.is_zero())


def is_neutral(space: KreinSpace, a: Subspace) -> bool:
    """Fast check: the Gram matrix of the basis vanishes."""
    return space.arithmetic.all_zero(gram_of(space, a))
