"""Green's boundary relations ``Gamma: K^2 -> H^2``.

Graph vectors are stored in block order ``(f, f', h, h')`` with ``f, f'`` in
``K`` and ``h, h'`` in the Hilbert space ``H``.  In finite dimension every
subspace is closed, "dense" means "everything" and "bounded" means
"single-valued"; results that mention closures are evaluated in that reading
(see :data:`FINITE_DIMENSION_NOTE`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg as la
from ._kernels import nevanlinna_kernel, pencil_abs_det
from .errors import (
    DimensionMismatch,
    EmptyRegularSet,
    GreenIdentityViolation,
    InconsistentRoutes,
    NonOperatorWeylValue,
    NotHilbert,
    PreconditionUnmet,
    SymmetryRequired,
)
from .relations import (
    LinearRelation,
    adjoint,
    as_relation,
    classify_relation,
    componentwise_sum,
    defect_subspace,
    finite_eigenvalues,
    has_eigenvalue_at,
    inverse,
    is_point_of_regular_type,
    is_symmetric,
    relation,
    restrict,
)
from .scalars import format_scalar, to_complex
from .spaces import (
    KreinSpace,
    Subspace,
    classify_subspace,
    contains,
    doubled_space,
    graph_side_space,
    intersect,
    isotropic_part,
    negative_index,
    orthogonal_companion,
    product_space,
    span,
    subspace_sum,
    zero_subspace,
)

__all__ = [
    "FINITE_DIMENSION_NOTE",
    "GreensBoundaryRelation",
    "BoundaryClassification",
    "Maximality",
    "DerivedObjects",
    "WeylSample",
    "build_gbr",
    "gbr_from_relation",
    "components",
    "derived_objects",
    "check_maximality",
    "classify_boundary",
    "main_transformation",
    "inverse_main_transformation",
    "main_transformation_vector",
    "inverse_main_transformation_vector",
    "weyl_family",
    "default_grid",
    "defect_span",
    "is_minimal",
    "nevanlinna_negative_squares",
    "closure_properties",
    "range_density_consequences",
    "minimality_consequences",
    "green_defects",
    "scan_grid",
]

FINITE_DIMENSION_NOTE = (
    "finite dimension: every subspace and relation is closed, dense means equal to the "
    "whole space, bounded means single-valued; conditions (dom)+ in closure(dom) and "
    "(dom)+ in dom coincide"
)


@dataclass(frozen=True, eq=False)
class GreensBoundaryRelation:
    """A relation ``K^2 -> H^2`` certified to satisfy Green's identity."""

    K: KreinSpace
    H: KreinSpace
    gamma: LinearRelation

    @property
    def n(self) -> int:
        return self.K.dim

    @property
    def m(self) -> int:
        return self.H.dim

    @property
    def arithmetic(self):
        return self.K.arithmetic

    @property
    def K2(self) -> KreinSpace:
        return doubled_space(self.K)

    @property
    def H2(self) -> KreinSpace:
        return doubled_space(self.H)

    @property
    def basis(self) -> np.ndarray:
        return self.gamma.graph.basis

    def block(self, name: str) -> np.ndarray:
        """Rows of the graph basis for one of ``f``, ``f'``, ``h``, ``h'``."""
        n, m = self.n, self.m
        cut = {"f": (0, n), "f'": (n, 2 * n), "h": (2 * n, 2 * n + m), "h'": (2 * n + m, 2 * n + 2 * m)}
        a, b = cut[name]
        return self.basis[a:b]

    @cached_property
    def components(self) -> tuple[LinearRelation, LinearRelation]:
        return _components(self)

    @cached_property
    def derived(self) -> "DerivedObjects":
        return _derived(self)

    @cached_property
    def maximality(self) -> "Maximality":
        return check_maximality(self)

    def __eq__(self, other):
        if not isinstance(other, GreensBoundaryRelation):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.gamma == other.gamma

    __hash__ = None

    def __repr__(self):
        return f"<GreensBoundaryRelation dim K={self.n} dim H={self.m} graph rank={self.gamma.graph.rank}>"


def green_defects(space_k2: KreinSpace, space_h2: KreinSpace, basis: np.ndarray) -> np.ndarray:
    """``D[j, i] = [f_i, f_j]_{K^2} - [h_i, h_j]_{H^2}`` over graph basis columns."""
    prod = product_space(space_k2, space_h2)
    return la.ctranspose(basis) @ prod.gram @ basis


def _check_hilbert(h: KreinSpace):
    if negative_index(h) > 0:
        raise NotHilbert("the boundary space must be positive definite", label=h.label)


def gbr_from_relation(K: KreinSpace, H: KreinSpace, gamma: LinearRelation) -> GreensBoundaryRelation:
    """Certify an existing relation ``K^2 -> H^2``."""
    _check_hilbert(H)
    ar = K.arithmetic
    if gamma.n != 2 * K.dim or gamma.m != 2 * H.dim:
        raise DimensionMismatch("relation does not act between the doubled spaces",
                                expected=[2 * K.dim, 2 * H.dim], got=[gamma.n, gamma.m])
    k2, h2 = doubled_space(K), doubled_space(H)
    if gamma.source is not k2 or gamma.target is not h2:
        gamma = LinearRelation(k2, h2, gamma.graph.within(product_space(k2, h2)))
    b = gamma.graph.basis
    if b.shape[1]:
        d = green_defects(k2, h2, b)
        if not ar.all_zero(d):
            flat = np.argwhere(np.abs(to_complex(d)) > (0 if ar.exact else ar.eps))
            j, i = (int(x) for x in flat[0])
            from .serialize import encode_vector
            raise GreenIdentityViolation(
                "Green's identity fails on a pair of graph basis vectors",
                pair=[i, j],
                first=encode_vector(b[:, i]),
                second=encode_vector(b[:, j]),
                defect=format_scalar(d[j, i]),
            )
    return GreensBoundaryRelation(K, H, gamma)


def build_gbr(K: KreinSpace, H: KreinSpace, graph_vectors) -> GreensBoundaryRelation:
    """Span the columns ``(f, f', h, h')`` and certify Green's identity.

    Raises :class:`GreenIdentityViolation` with the first failing pair of
    canonical basis vectors and the value ``[f^,g^]_{K^2} - [h^,k^]_{H^2}``.
    """
    _check_hilbert(H)
    k2, h2 = doubled_space(K), doubled_space(H)
    vecs = np.asarray([] if graph_vectors is None else graph_vectors)
    if vecs.size == 0:
        vecs = K.arithmetic.zeros(2 * K.dim + 2 * H.dim, 0)
    elif vecs.ndim == 1:
        vecs = vecs.reshape(-1, 1)
    if vecs.shape[0] != 2 * (K.dim + H.dim):
        raise DimensionMismatch("graph vectors must have length 2 dim K + 2 dim H",
                                expected=2 * (K.dim + H.dim), got=int(vecs.shape[0]))
    return gbr_from_relation(K, H, relation(k2, h2, vecs))


# components and derived objects ----------------------------------------------------

def _components(g: GreensBoundaryRelation):
    n2, m = 2 * g.n, g.m
    b = g.basis
    k2 = g.K2
    g0 = relation(k2, g.H, np.concatenate([b[:n2], b[n2:n2 + m]], axis=0))
    g1 = relation(k2, g.H, np.concatenate([b[:n2], b[n2 + m:]], axis=0))
    return g0, g1


def components(g: GreensBoundaryRelation) -> tuple[LinearRelation, LinearRelation]:
    """``(Gamma_0, Gamma_1)``: the relations ``f^ -> h`` and ``f^ -> h'``, both ``K^2 -> H``."""
    return g.components


def kernel_relation(g: GreensBoundaryRelation, i: int) -> LinearRelation:
    """``ker Gamma_i`` as a relation in ``K``."""
    return as_relation(g.components[i].ker, g.K)


def mul_component_relation(g: GreensBoundaryRelation, i: int) -> LinearRelation:
    """``mul Gamma_i`` as a relation in ``H``: ``{(h, 0)}`` for ``i = 0``, ``{(0, h')}`` for ``i = 1``."""
    ar = g.arithmetic
    mul = g.components[i].mul
    z = ar.zeros(g.m, mul.rank)
    vecs = np.concatenate([mul.basis, z] if i == 0 else [z, mul.basis], axis=0)
    return relation(g.H, g.H, vecs)


@dataclass(frozen=True, eq=False)
class DerivedObjects:
    """``T = dom Gamma``, ``S = T+``, ``M`` the isotropic part of ``T``, ``N = ker Gamma``
    and the range-side analogues ``S~ = (ran Gamma)+``, ``M~``, ``N~ = mul Gamma``."""

    T: LinearRelation
    S: LinearRelation
    M: LinearRelation
    N: LinearRelation
    S_tilde: LinearRelation
    M_tilde: LinearRelation
    N_tilde: LinearRelation
    ran: LinearRelation

    def as_dict(self) -> dict:
        from .serialize import encode_relation_graph
        return {k: encode_relation_graph(v) for k, v in (
            ("T", self.T), ("S", self.S), ("M", self.M), ("N", self.N),
            ("S~", self.S_tilde), ("M~", self.M_tilde), ("N~", self.N_tilde))}


def _derived(g: GreensBoundaryRelation) -> DerivedObjects:
    K, H = g.K, g.H
    dom, ran = g.gamma.dom, g.gamma.ran
    T = as_relation(dom, K)
    R = as_relation(ran, H)
    return DerivedObjects(
        T=T,
        S=adjoint(T),
        M=as_relation(isotropic_part(g.K2, dom), K),
        N=as_relation(g.gamma.ker, K),
        S_tilde=adjoint(R),
        M_tilde=as_relation(isotropic_part(g.H2, ran), H),
        N_tilde=as_relation(g.gamma.mul, H),
        ran=R,
    )


def derived_objects(g: GreensBoundaryRelation) -> DerivedObjects:
    return g.derived


# maximality ------------------------------------------------------------------------

@dataclass(frozen=True)
class Maximality:
    cond222: bool
    cond223: bool
    cond228: bool
    note: str = FINITE_DIMENSION_NOTE

    def as_dict(self) -> dict:
        return {"cond222": self.cond222, "cond223": self.cond223, "cond228": self.cond228, "note": self.note}


def check_maximality(g: GreensBoundaryRelation) -> Maximality:
    """Maximality of ``dom Gamma``.

    ``cond222``/``cond223``: ``(dom Gamma)+`` is contained in ``dom Gamma``
    (the closure is the set itself).  ``cond228``: the orthogonal companion
    of ``dom Gamma`` in ``K^2`` is contained in ``dom Gamma``.  When they hold,
    ``S+ = dom Gamma`` is verified as well.
    """
    dom = g.gamma.dom
    s = g.derived.S
    c222 = contains(dom, s.graph)
    c228 = contains(dom, orthogonal_companion(g.K2, dom))
    if c222 != c228:
        raise InconsistentRoutes("adjoint and companion forms of maximality disagree")
    if c222 and adjoint(s).graph != dom:
        raise InconsistentRoutes("S+ differs from dom Gamma although maximality holds")
    return Maximality(c222, c222, c228)


# classification --------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryClassification:
    greens: bool
    isometricBoundary: bool
    unitaryBoundary: bool
    ordinaryTriple: bool
    abGeneralized: bool
    bGeneralized: bool
    quasiBoundary: bool
    sGeneralized: bool
    trivial: bool
    maximality: Maximality
    derived: DerivedObjects = field(repr=False)
    note: str = FINITE_DIMENSION_NOTE

    FLAGS = ("greens", "isometricBoundary", "unitaryBoundary", "ordinaryTriple", "abGeneralized",
             "bGeneralized", "quasiBoundary", "sGeneralized", "trivial")

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in self.FLAGS}

    def as_dict(self, with_objects: bool = True) -> dict:
        out = {"flags": self.flags(), "maximality": self.maximality.as_dict(), "note": self.note}
        if with_objects:
            out["derived"] = self.derived.as_dict()
        return out


def is_unitary_boundary(g: GreensBoundaryRelation) -> bool:
    """``Gamma* = Gamma^{-1}``, cross-checked with hyper-maximal neutrality of the graph."""
    by_adjoint = adjoint(g.gamma) == inverse(g.gamma)
    by_geometry = classify_subspace(g.gamma.graph.ambient, g.gamma.graph).hyperMaximalNeutral
    if by_adjoint != by_geometry:
        raise InconsistentRoutes("unitarity routes disagree")
    return by_adjoint


def is_trivial(g: GreensBoundaryRelation) -> bool:
    """Graph equals ``ker Gamma x mul Gamma``."""
    ar = g.arithmetic
    ker, mul = g.gamma.ker, g.gamma.mul
    n2, m2 = 2 * g.n, 2 * g.m
    left = np.concatenate([ker.basis, ar.zeros(m2, ker.rank)], axis=0)
    right = np.concatenate([ar.zeros(n2, mul.rank), mul.basis], axis=0)
    prod = span(g.gamma.graph.ambient, np.concatenate([left, right], axis=1))
    return prod == g.gamma.graph


def _self_adjoint_operator(r: LinearRelation) -> tuple[bool, bool]:
    cls = classify_relation(r)
    return cls.selfAdjoint, cls.selfAdjoint and cls.operator


def classify_boundary(g: GreensBoundaryRelation) -> BoundaryClassification:
    mx = g.maximality
    g0, _ = g.components
    ran_full = g.gamma.ran.is_full()
    ran0_full = g0.ran.is_full()
    a_sa, a_sa_op = _self_adjoint_operator(kernel_relation(g, 0))
    unitary = is_unitary_boundary(g)
    ab = mx.cond222 and ran0_full and a_sa
    return BoundaryClassification(
        greens=True,
        isometricBoundary=mx.cond222,
        unitaryBoundary=unitary,
        ordinaryTriple=ran_full and mx.cond228,
        abGeneralized=ab,
        bGeneralized=ab,
        quasiBoundary=mx.cond222 and ran_full and a_sa_op,
        sGeneralized=unitary and a_sa_op,
        trivial=is_trivial(g),
        maximality=mx,
        derived=g.derived,
    )


# main transformation ----------------------------------------------------------------

def _j_perm(n: int, m: int):
    """Row order and signs of ``(f, f', h, h') -> ((f, h), (f', -h'))``."""
    f = list(range(0, n))
    fp = list(range(n, 2 * n))
    h = list(range(2 * n, 2 * n + m))
    hp = list(range(2 * n + m, 2 * n + 2 * m))
    order = f + h + fp + hp
    signs = [1] * (2 * n + m) + [-1] * m
    return order, signs


def main_transformation_vector(x, n: int, m: int) -> np.ndarray:
    """Apply the main transformation to coordinate vectors (columns)."""
    x = np.asarray(x)
    order, signs = _j_perm(n, m)
    out = x[order]
    for r, s in enumerate(signs):
        if s < 0:
            out[r] = -out[r]
    return out


def inverse_main_transformation_vector(y, n: int, m: int) -> np.ndarray:
    """``((a, b), (c, d)) -> (a, c, b, -d)``."""
    y = np.asarray(y)
    order, signs = _j_perm(n, m)
    out = y.copy()
    for r, (src, s) in enumerate(zip(order, signs)):
        out[src] = -y[r] if s < 0 else y[r]
    return out


def main_transformation(g: GreensBoundaryRelation) -> LinearRelation:
    """The relation ``A~`` in ``K x H`` (form ``[.,.]_K + (.,.)_H``) obtained by the shuffle."""
    e = graph_side_space(g.K, g.H)
    vecs = main_transformation_vector(g.basis, g.n, g.m)
    return relation(e, e, vecs)


def inverse_main_transformation(a: LinearRelation, K: KreinSpace, H: KreinSpace) -> GreensBoundaryRelation:
    """Green's boundary relation ``J^{-1}(A~)`` for a symmetric relation ``A~`` in ``K x H``."""
    e = graph_side_space(K, H)
    if a.n != e.dim or a.m != e.dim:
        raise DimensionMismatch("relation does not live in K x H", expected=e.dim, got=[a.n, a.m])
    a = LinearRelation(e, e, a.graph.within(product_space(e, e)))
    if not is_symmetric(a):
        raise SymmetryRequired("the relation in K x H is not symmetric")
    vecs = inverse_main_transformation_vector(a.graph.basis, K.dim, H.dim)
    return build_gbr(K, H, vecs)


# Weyl families ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WeylSample:
    z: object
    family: LinearRelation
    isOperator: bool
    matrix: np.ndarray | None

    def as_dict(self) -> dict:
        from .serialize import encode_matrix, encode_relation_graph
        return {
            "z": format_scalar(self.z),
            "family": encode_relation_graph(self.family),
            "isOperator": self.isOperator,
            "matrix": encode_matrix(self.matrix) if self.matrix is not None else None,
        }


def _defect_pairs(g: GreensBoundaryRelation, z) -> Subspace:
    """``R^_z(T) = {(f, z f) : f in ker(T - z)}`` as a subspace of ``K^2``."""
    ar = g.arithmetic
    z = ar.scalar(z)
    rz = defect_subspace(g.derived.T, z)
    if rz.is_zero():
        return zero_subspace(g.K2)
    return span(g.K2, np.concatenate([rz.basis, rz.basis * z], axis=0))


def weyl_family(g: GreensBoundaryRelation, z) -> WeylSample:
    """``M(z) = Gamma(R^_z(T))`` as a relation ``h -> h'`` in ``H``."""
    ar = g.arithmetic
    z = ar.scalar(z)
    pairs = _defect_pairs(g, z)
    image = restrict(g.gamma, pairs).ran
    fam = as_relation(image, g.H)
    op = fam.is_operator()
    mat = fam.matrix()
    return WeylSample(z, fam, op, mat)


def default_grid(g: GreensBoundaryRelation | None = None) -> list:
    """``{i, -i, 2i, -2i, 1+i, -1+i}`` without points that are not of regular type for ``S``."""
    from .scalars import Gaussian
    pts = [Gaussian(0, 1), Gaussian(0, -1), Gaussian(0, 2), Gaussian(0, -2), Gaussian(1, 1), Gaussian(-1, 1)]
    if g is None:
        return pts
    s = g.derived.S
    return [p for p in pts if is_point_of_regular_type(s, g.arithmetic.scalar(p))]


def defect_span(g: GreensBoundaryRelation, points) -> tuple[Subspace, list]:
    """Span of ``ker(T - z)`` over the supplied points of regular type of ``S``.

    Returns ``(span, used_points)``; raises :class:`EmptyRegularSet` if no
    point is of regular type.
    """
    ar = g.arithmetic
    s, t = g.derived.S, g.derived.T
    used = [ar.scalar(p) for p in points if is_point_of_regular_type(s, ar.scalar(p))]
    if not used:
        raise EmptyRegularSet("no supplied point is of regular type for S",
                              points=[format_scalar(ar.scalar(p)) for p in points])
    total = zero_subspace(g.K)
    for z in used:
        total = subspace_sum(total, defect_subspace(t, z))
    return total, used


def is_minimal(g: GreensBoundaryRelation, points=None) -> bool:
    """Defect subspaces of ``T`` over the grid span ``K``."""
    pts = default_grid() if points is None else points
    total, _ = defect_span(g, pts)
    return total.is_full()


def nevanlinna_negative_squares(g: GreensBoundaryRelation, points, eps: float = 1e-8) -> int:
    """Negative eigenvalue count of the Nevanlinna kernel on ``points``.

    Weyl values are computed in the relation's own arithmetic; only the
    kernel eigenvalues (irrational in general) are computed in float.
    """
    ar = g.arithmetic
    zs = [ar.scalar(p) for p in points]
    if not zs:
        return 0
    cz = [complex(z) for z in zs]
    if any(z.imag <= 0 for z in cz):
        raise ValueError("points must lie in the open upper half-plane")
    if len(set(cz)) != len(cz):
        raise ValueError("points must be pairwise distinct")
    mats = []
    for z in zs:
        w = weyl_family(g, z)
        if w.matrix is None:
            raise NonOperatorWeylValue("Weyl family is not an everywhere defined operator",
                                       z=format_scalar(z))
        mats.append(to_complex(w.matrix))
    if g.m == 0:
        return 0
    kern = nevanlinna_kernel(np.stack(mats), np.array(cz), to_complex(g.H.gram))
    w = np.linalg.eigvalsh(0.5 * (kern + kern.conj().T))
    return int(np.sum(w < -eps))


# consequence reports -----------------------------------------------------------------

@dataclass(frozen=True)
class Report:
    checks: dict
    note: str = FINITE_DIMENSION_NOTE

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {"checks": dict(self.checks), "holds": self.holds, "note": self.note}


def closure_properties(g: GreensBoundaryRelation) -> Report:
    """Closure statements with ``closure(Gamma) = Gamma``."""
    d = g.derived
    kerg = d.N
    return Report({
        "closureIsGreens": True,
        "kerSymmetric": classify_relation(kerg).symmetric,
        "cond222Preserved": g.maximality.cond222 == check_maximality(g).cond222,
        "sEqualsClosureS": d.S == adjoint(as_relation(g.gamma.dom, g.K)),
        "isotropicInS": contains(d.S.graph, d.M.graph),
    })


def gamma_image(rel: LinearRelation, sub: Subspace) -> Subspace:
    """``rel(sub)``: the range of ``rel`` restricted to ``sub``."""
    return restrict(rel, sub).ran


def range_density_consequences(g: GreensBoundaryRelation) -> Report:
    """Consequences of ``ran Gamma = H^2`` together with maximality."""
    failed = []
    if not g.gamma.ran.is_full():
        failed.append("ran Gamma = H^2")
    if not g.maximality.cond222:
        failed.append("cond222")
    if failed:
        raise PreconditionUnmet("hypotheses not satisfied", failed=failed)
    g0, g1 = g.components
    s0, s1 = kernel_relation(g, 0), kernel_relation(g, 1)
    s = g.derived.S
    img0 = gamma_image(g0, g1.ker)
    img1 = gamma_image(g1, g0.ker)
    return Report({
        "ran0EqualsImageOfKer1": img0 == g0.ran,
        "image0Full": img0.is_full(),
        "image1Full": img1.is_full(),
        "S0SelfAdjoint": classify_relation(s0).selfAdjoint,
        "S1SelfAdjoint": classify_relation(s1).selfAdjoint,
        "SIsIntersection": s.graph == intersect(s0.graph, s1.graph),
        "SPlusIsSum": adjoint(s).graph == componentwise_sum(s0, s1).graph,
    })


def scan_grid(radius: float = 3.0, step: float = 0.25) -> np.ndarray:
    """Square lattice of complex points, shifted off the axes."""
    ticks = np.arange(-radius, radius + step / 2, step) + step / 7
    re, im = np.meshgrid(ticks, ticks)
    return (re + 1j * im).ravel()


def minimality_consequences(g: GreensBoundaryRelation, grid=None, floor: float = 1e-6) -> Report:
    """``S`` is an operator without eigenvalues, for minimal ``Gamma`` with maximality."""
    pts = default_grid() if grid is None else grid
    failed = []
    if not g.maximality.cond222:
        failed.append("cond222")
    try:
        minimal = is_minimal(g, pts)
    except EmptyRegularSet:
        minimal = False
    if not minimal:
        failed.append("minimal")
    if failed:
        raise PreconditionUnmet("hypotheses not satisfied", failed=failed)
    s = g.derived.S
    ar = g.arithmetic
    report = finite_eigenvalues(s)
    exact_hits = [p for p in pts if has_eigenvalue_at(s, ar.scalar(p))]
    scan = pencil_abs_det(to_complex(s.top), to_complex(s.bottom), scan_grid())
    return Report({
        "operator": s.is_operator(),
        "noEigenvalues": not report.degenerate and not report.values,
        "noGridEigenvalues": not exact_hits,
        "pencilScanClear": bool(scan.size == 0 or scan.min() > floor),
    })
