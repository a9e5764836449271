"""Linear relations between Krein spaces.

A relation ``R: X -> Y`` is a subspace of ``X (+) Y``; its graph is stored as
a :class:`~krel.spaces.Subspace` of :func:`~krel.spaces.product_space`, whose
form ``[.,.]_X - [.,.]_Y`` makes isometric relations exactly the neutral
graphs.  Relations with ``X is Y`` are "relations in X".
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from ._pencil import pencil_eigenvalues
from .errors import InconsistentRoutes, NotDisjoint, SpaceMismatch
from .scalars import Arithmetic, format_scalar, to_complex
from .spaces import (
    KreinSpace,
    Subspace,
    classify_subspace,
    contains,
    doubled_space,
    inner_product,
    intersect,
    is_neutral,
    orthogonal_companion,
    orthogonal_sum,
    product_space,
    span,
    subspace_sum,
    zero_subspace,
)

__all__ = [
    "LinearRelation",
    "RelationClassification",
    "EigenvalueReport",
    "relation",
    "graph_of",
    "identity",
    "zero_relation",
    "full_relation",
    "parts",
    "inverse",
    "scale",
    "operator_sum",
    "componentwise_sum",
    "disjoint_sum",
    "compose",
    "restrict",
    "shift_by",
    "adjoint",
    "adjoint_via_companion",
    "adjoint_by_definition",
    "classify_relation",
    "finite_eigenvalues",
    "has_eigenvalue_at",
    "defect_subspace",
    "is_point_of_regular_type",
    "is_regular_point",
    "direct_orthogonal_sum",
    "as_relation",
]


@dataclass(frozen=True, eq=False)
class LinearRelation:
    """Relation ``source -> target`` given by a canonical graph."""

    source: KreinSpace
    target: KreinSpace
    graph: Subspace

    @property
    def arithmetic(self) -> Arithmetic:
        return self.source.arithmetic

    @property
    def n(self) -> int:
        return self.source.dim

    @property
    def m(self) -> int:
        return self.target.dim

    @property
    def top(self) -> np.ndarray:
        """First components ``F`` of the graph basis."""
        return self.graph.basis[: self.n]

    @property
    def bottom(self) -> np.ndarray:
        """Second components ``F'`` of the graph basis."""
        return self.graph.basis[self.n:]

    @cached_property
    def parts(self) -> "Parts":
        return _parts(self)

    @property
    def dom(self) -> Subspace:
        return self.parts.dom

    @property
    def ran(self) -> Subspace:
        return self.parts.ran

    @property
    def ker(self) -> Subspace:
        return self.parts.ker

    @property
    def mul(self) -> Subspace:
        return self.parts.mul

    def is_operator(self) -> bool:
        return self.mul.is_zero()

    def in_one_space(self) -> bool:
        return self.source is self.target

    def same_spaces(self, other: "LinearRelation") -> bool:
        return self.source is other.source and self.target is other.target

    def __eq__(self, other):
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.graph == other.graph

    __hash__ = None

    def __le__(self, other: "LinearRelation") -> bool:
        return _compatible_dims(self, other) and contains(other.graph, self.graph)

    def __ge__(self, other: "LinearRelation") -> bool:
        return other <= self

    def matrix(self) -> np.ndarray | None:
        """Matrix of an everywhere defined operator, else ``None``."""
        if not self.is_operator() or not self.dom.is_full():
            return None
        f, fp = self.top, self.bottom
        return fp @ la.inverse(self.arithmetic, f)

    def __repr__(self):
        kind = "in" if self.in_one_space() else "between"
        return f"<LinearRelation {kind} dims {self.n}->{self.m}, graph rank {self.graph.rank}>"


def _compatible_dims(a: LinearRelation, b: LinearRelation) -> bool:
    return a.n == b.n and a.m == b.m


def relation(source: KreinSpace, target: KreinSpace, graph_vectors) -> LinearRelation:
    """Relation spanned by the columns of ``graph_vectors`` (``(dim X + dim Y) x k``)."""
    amb = product_space(source, target)
    return LinearRelation(source, target, span(amb, graph_vectors))


def _from_blocks(source: KreinSpace, target: KreinSpace, top: np.ndarray, bottom: np.ndarray) -> LinearRelation:
    amb = product_space(source, target)
    if top.shape[1] == 0:
        return LinearRelation(source, target, zero_subspace(amb))
    return LinearRelation(source, target, span(amb, np.concatenate([top, bottom], axis=0)))


def as_relation(sub: Subspace, source: KreinSpace, target: KreinSpace | None = None) -> LinearRelation:
    """Reinterpret a subspace of ``source (+) target`` as a relation."""
    target = source if target is None else target
    return LinearRelation(source, target, sub.within(product_space(source, target)))


def graph_of(source: KreinSpace, target: KreinSpace, mat) -> LinearRelation:
    """Graph of the operator with matrix ``mat`` (``dim Y x dim X``)."""
    ar = source.arithmetic
    a = ar.array(mat).reshape(target.dim, source.dim)
    return _from_blocks(source, target, ar.eye(source.dim), a)


def identity(space: KreinSpace) -> LinearRelation:
    return graph_of(space, space, space.arithmetic.eye(space.dim))


def zero_relation(source: KreinSpace, target: KreinSpace | None = None) -> LinearRelation:
    """The relation ``{(0, 0)}``."""
    target = source if target is None else target
    return LinearRelation(source, target, zero_subspace(product_space(source, target)))


def full_relation(source: KreinSpace, target: KreinSpace | None = None) -> LinearRelation:
    """The relation ``X x Y`` (everything)."""
    target = source if target is None else target
    amb = product_space(source, target)
    return LinearRelation(source, target, span(amb, source.arithmetic.eye(amb.dim)))


# parts ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Parts:
    dom: Subspace
    ran: Subspace
    ker: Subspace
    mul: Subspace


def _image(space: KreinSpace, mat: np.ndarray, coeff: np.ndarray) -> Subspace:
    if coeff.shape[1] == 0:
        return zero_subspace(space)
    return span(space, mat @ coeff)


def _parts(r: LinearRelation) -> Parts:
    ar = r.arithmetic
    f, fp = r.top, r.bottom
    k = r.graph.rank
    if k == 0:
        return Parts(zero_subspace(r.source), zero_subspace(r.target), zero_subspace(r.source),
                     zero_subspace(r.target))
    dom = span(r.source, f) if r.n else zero_subspace(r.source)
    ran = span(r.target, fp) if r.m else zero_subspace(r.target)
    ker = _image(r.source, f, la.nullspace(ar, fp)) if r.n else zero_subspace(r.source)
    mul = _image(r.target, fp, la.nullspace(ar, f)) if r.m else zero_subspace(r.target)
    return Parts(dom, ran, ker, mul)


def parts(r: LinearRelation) -> Parts:
    """``(dom, ran, ker, mul)`` of a relation."""
    return r.parts


# algebra -------------------------------------------------------------------------

def inverse(r: LinearRelation) -> LinearRelation:
    """``{(g, f) : (f, g) in R}``."""
    return _from_blocks(r.target, r.source, r.bottom, r.top)


def scale(z, r: LinearRelation) -> LinearRelation:
    """``zR = {(f, z g) : (f, g) in R}``."""
    z = r.arithmetic.scalar(z)
    return _from_blocks(r.source, r.target, r.top, r.bottom * z)


def _require_same(s: LinearRelation, t: LinearRelation):
    if not _compatible_dims(s, t):
        raise SpaceMismatch("relations act between spaces of different dimensions",
                            left=[s.n, s.m], right=[t.n, t.m])


def operator_sum(s: LinearRelation, t: LinearRelation) -> LinearRelation:
    """``S + T = {(f, g + k) : (f, g) in S, (f, k) in T}``."""
    _require_same(s, t)
    ar = s.arithmetic
    ks = s.graph.rank
    coeff = la.nullspace(ar, np.concatenate([s.top, -t.top], axis=1))
    a, b = coeff[:ks], coeff[ks:]
    return _from_blocks(s.source, s.target, s.top @ a, s.bottom @ a + t.bottom @ b)


def componentwise_sum(s: LinearRelation, t: LinearRelation) -> LinearRelation:
    """``{(f + h, g + k) : (f, g) in S, (h, k) in T}``."""
    _require_same(s, t)
    return LinearRelation(s.source, s.target, subspace_sum(s.graph, t.graph))


def disjoint_sum(s: LinearRelation, t: LinearRelation) -> LinearRelation:
    """Componentwise sum of relations whose graphs meet only in zero."""
    _require_same(s, t)
    common = intersect(s.graph, t.graph)
    if not common.is_zero():
        raise NotDisjoint("graphs intersect nontrivially", intersection_rank=common.rank)
    return componentwise_sum(s, t)


def compose(u: LinearRelation, t: LinearRelation) -> LinearRelation:
    """``UT = {(f, k) : (f, g) in T, (g, k) in U}``."""
    if t.m != u.n or (t.target is not u.source and not t.arithmetic.equal(t.target.gram, u.source.gram)):
        raise SpaceMismatch("target of the right factor differs from source of the left factor")
    ar = t.arithmetic
    kt = t.graph.rank
    coeff = la.nullspace(ar, np.concatenate([t.bottom, -u.top], axis=1))
    a, b = coeff[:kt], coeff[kt:]
    return _from_blocks(t.source, u.target, t.top @ a, u.bottom @ b)


def restrict(r: LinearRelation, d: Subspace) -> LinearRelation:
    """``{(f, g) in R : f in D}``."""
    ar = r.arithmetic
    if d.ambient.dim != r.n:
        raise SpaceMismatch("restriction subspace does not live in the source space")
    amb = r.graph.ambient
    box = np.concatenate([
        np.concatenate([d.basis, ar.zeros(r.n, r.m)], axis=1),
        np.concatenate([ar.zeros(r.m, d.rank), ar.eye(r.m)], axis=1),
    ], axis=0)
    return LinearRelation(r.source, r.target, intersect(r.graph, span(amb, box)))


def shift_by(r: LinearRelation, z) -> LinearRelation:
    """``R - z = {(f, g - z f) : (f, g) in R}`` (requires ``R`` in one space)."""
    if r.n != r.m:
        raise SpaceMismatch("R - z needs a relation in one space")
    z = r.arithmetic.scalar(z)
    return _from_blocks(r.source, r.target, r.top, r.bottom - r.top * z)


# adjoint -------------------------------------------------------------------------

def adjoint_via_companion(r: LinearRelation) -> LinearRelation:
    """``R* = (R^[perp])^{-1}`` with the companion taken in ``X x Y``."""
    comp = orthogonal_companion(r.graph.ambient, r.graph)
    return inverse(LinearRelation(r.source, r.target, comp))


def adjoint_by_definition(r: LinearRelation) -> LinearRelation:
    """All ``(k, h)`` with ``[f, h]_X = [g, k]_Y`` for every graph basis pair ``(f, g)``.

    The conditions are linear in ``(k, h)`` after conjugation,
    ``[h, f]_X - [k, g]_Y = 0``; row coefficients are obtained by evaluating the
    inner products on unit vectors.
    """
    ar = r.arithmetic
    n, m = r.n, r.m
    ex, ey = ar.eye(n), ar.eye(m)
    rows = []
    for j in range(r.graph.rank):
        f = r.top[:, j]
        g = r.bottom[:, j]
        row = [-inner_product(r.target, ey[:, a], g) for a in range(m)]
        row += [inner_product(r.source, ex[:, b], f) for b in range(n)]
        rows.append(row)
    if not rows:
        sol = ar.eye(n + m)
    else:
        sol = la.nullspace(ar, ar.array(rows, shape=(len(rows), n + m)))
    amb = product_space(r.target, r.source)
    if sol.shape[1] == 0:
        return LinearRelation(r.target, r.source, zero_subspace(amb))
    return LinearRelation(r.target, r.source, span(amb, sol))


def adjoint(r: LinearRelation, verify: bool = True) -> LinearRelation:
    """Adjoint relation ``R*: Y -> X``.

    Computed from the orthogonal companion of the graph; with ``verify`` the
    definitional solve is computed too and both must agree.
    """
    out = adjoint_via_companion(r)
    if verify:
        other = adjoint_by_definition(r)
        if out.graph != other.graph:
            raise InconsistentRoutes("adjoint routes disagree")
    return out


# classification ------------------------------------------------------------------

@dataclass(frozen=True)
class RelationClassification:
    operator: bool
    isometric: bool
    unitary: bool
    neutralInProduct: bool
    hyperMaximalInProduct: bool
    symmetric: bool | None = None
    selfAdjoint: bool | None = None

    def as_dict(self) -> dict:
        out = {
            "operator": self.operator,
            "isometric": self.isometric,
            "unitary": self.unitary,
            "neutralInProduct": self.neutralInProduct,
            "hyperMaximalInProduct": self.hyperMaximalInProduct,
        }
        if self.symmetric is not None:
            out["symmetric"] = self.symmetric
            out["selfAdjoint"] = self.selfAdjoint
        return out


def _agree(name: str, a: bool, b: bool) -> bool:
    if a != b:
        raise InconsistentRoutes(f"{name}: geometric and definitional checks disagree", flag=name)
    return a


def classify_relation(r: LinearRelation) -> RelationClassification:
    """Flags of a relation, each decided by two routes that must agree.

    Isometric/unitary: neutral/hyper-maximal neutral graph in ``X x Y`` versus
    ``R^{-1} <= R*`` / ``R^{-1} = R*``.  Symmetric/self-adjoint (only for a
    relation in one space): neutral/hyper-maximal neutral in the doubled space
    versus ``R <= R+`` / ``R = R+``.
    """
    prod_cls = classify_subspace(r.graph.ambient, r.graph)
    star = adjoint(r)
    inv = inverse(r)
    isometric = _agree("isometric", prod_cls.neutral, contains(star.graph, inv.graph))
    unitary = _agree("unitary", prod_cls.hyperMaximalNeutral, star == inv)
    symmetric = self_adjoint = None
    if r.in_one_space():
        dbl = doubled_space(r.source)
        dcls = classify_subspace(dbl, r.graph.within(dbl))
        symmetric = _agree("symmetric", dcls.neutral, contains(star.graph, r.graph))
        self_adjoint = _agree("selfAdjoint", dcls.hyperMaximalNeutral, star == r)
    return RelationClassification(
        operator=r.is_operator(),
        isometric=isometric,
        unitary=unitary,
        neutralInProduct=prod_cls.neutral,
        hyperMaximalInProduct=prod_cls.hyperMaximalNeutral,
        symmetric=symmetric,
        selfAdjoint=self_adjoint,
    )


def is_symmetric(r: LinearRelation) -> bool:
    """Neutral graph in the doubled space (single route, for internal use)."""
    return is_neutral(doubled_space(r.source), r.graph.within(doubled_space(r.source)))


def is_self_adjoint(r: LinearRelation) -> bool:
    return r.graph.rank == r.n and is_symmetric(r)


# spectra -------------------------------------------------------------------------

def _require_square(r: LinearRelation):
    if r.n != r.m:
        raise SpaceMismatch("spectral notions need a relation in one space")


def defect_subspace(r: LinearRelation, z) -> Subspace:
    """``ker(R - z) = {f : (f, z f) in R}``."""
    _require_square(r)
    ar = r.arithmetic
    z = ar.scalar(z)
    pencil = r.bottom - r.top * z
    coeff = la.nullspace(ar, pencil) if r.graph.rank else ar.zeros(0, 0)
    return _image(r.source, r.top, coeff)


def has_eigenvalue_at(r: LinearRelation, z) -> bool:
    return not defect_subspace(r, z).is_zero()


def is_point_of_regular_type(r: LinearRelation, z) -> bool:
    """``ker(R - z) = {0}``; in finite dimension ``(R - z)^{-1}`` is then a bounded operator."""
    return defect_subspace(r, z).is_zero()


def is_regular_point(r: LinearRelation, z) -> bool:
    """Point of regular type with ``ran(R - z)`` equal to the whole space."""
    if not is_point_of_regular_type(r, z):
        return False
    return shift_by(r, z).ran.is_full()


@dataclass(frozen=True)
class EigenvalueReport:
    """Finite eigenvalues of a relation in one space.

    ``degenerate`` means ``ker(R - z) != {0}`` for every ``z`` (the pencil is
    singular); ``values`` is then empty.  ``infinite`` records ``mul R != {0}``.
    """

    values: tuple[complex, ...]
    degenerate: bool
    infinite: bool

    def as_dict(self) -> dict:
        return {"values": [format_scalar(v) for v in self.values], "degenerate": self.degenerate,
                "infinite": self.infinite}


def finite_eigenvalues(r: LinearRelation, eps: float | None = None) -> EigenvalueReport:
    """Eigenvalues from the pencil ``(F', F)`` of the graph blocks (float).

    ``z`` is an eigenvalue iff ``F' - zF`` has a nontrivial kernel (graph
    basis columns are independent, so any such kernel vector gives ``Fc != 0``).
    Tall pencils are reduced by two random projections whose common
    generalized eigenvalues are confirmed by the smallest singular value.
    """
    _require_square(r)
    eps = eps if eps is not None else r.arithmetic.eps
    values, degenerate = pencil_eigenvalues(to_complex(r.top), to_complex(r.bottom), eps)
    return EigenvalueReport(tuple(values), degenerate, not r.mul.is_zero())


# direct orthogonal sums ------------------------------------------------------------

def direct_orthogonal_sum(a1: LinearRelation, a2: LinearRelation,
                          ambient: KreinSpace | None = None) -> LinearRelation:
    """``{((h1, h2), (h1', h2')) : (h_l, h_l') in A_l}`` in ``K1 [+] K2``.

    The component spaces must be different objects.  ``ambient`` may supply a
    prebuilt sum space (for example :func:`~krel.spaces.graph_side_space`).
    """
    if not (a1.in_one_space() and a2.in_one_space()):
        raise SpaceMismatch("direct orthogonal sum needs relations in one space each")
    if a1.source is a2.source:
        raise SpaceMismatch("component spaces must be distinct objects")
    ar = a1.arithmetic
    n1, n2 = a1.n, a2.n
    amb = ambient if ambient is not None else orthogonal_sum(a1.source, a2.source)
    if amb.dim != n1 + n2:
        raise SpaceMismatch("ambient dimension does not match the components")
    k1, k2 = a1.graph.rank, a2.graph.rank
    top = ar.zeros(n1 + n2, k1 + k2)
    bot = ar.zeros(n1 + n2, k1 + k2)
    top[:n1, :k1] = a1.top
    bot[:n1, :k1] = a1.bottom
    top[n1:, k1:] = a2.top
    bot[n1:, k1:] = a2.bottom
    return _from_blocks(amb, amb, top, bot)

