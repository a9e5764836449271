"""Random instances with exact Gaussian-rational entries.

Neutral subspaces are produced in frame coordinates, where the form is
``diag(I_p, -I_q)``: the span of ``(E y, U y)`` with ``E`` and ``U`` having
orthonormal columns is neutral.  Rational unitaries come from the Cayley
transform of a skew-Hermitian matrix, so no square roots are needed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import GenerationExhausted, UnbalancedSignature
from .green import GreensBoundaryRelation, build_gbr, check_maximality, classify_boundary
from .relations import LinearRelation, classify_relation, relation
from .scalars import EXACT, Arithmetic, Gaussian
from .spaces import (
    Frame,
    KreinSpace,
    Subspace,
    classify_subspace,
    doubled_space,
    frame_of,
    graph_side_space,
    is_neutral,
    product_space,
    span,
)

__all__ = [
    "GeneratorConfig",
    "Gen",
    "RETRY_BUDGET",
    "GBR_KINDS",
]

RETRY_BUDGET = 100
GBR_KINDS = ("any", "isometricBoundary", "unitaryBoundary", "ordinary", "surjective")


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    maxDim: int = 6
    kappa: int | None = None
    entryBound: int = 8
    trials: int = 500

    def __post_init__(self):
        if self.maxDim < 1:
            raise ValueError("maxDim must be at least 1")
        if self.kappa is not None and not 0 <= self.kappa <= self.maxDim:
            raise ValueError("kappa must lie in [0, maxDim]")
        if self.entryBound < 1:
            raise ValueError("entryBound must be positive")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")


@dataclass(frozen=True)
class HyperbolicPairs:
    """Columns ``b_j``, ``b'_j`` with ``[b_i, b'_j] = delta_ij`` and both families neutral."""

    b: np.ndarray
    bp: np.ndarray


class Gen:
    """Instance factory driven by one numpy ``Generator`` stream."""

    def __init__(self, rng: np.random.Generator, cfg: GeneratorConfig | None = None,
                 arithmetic: Arithmetic = EXACT, trial: int = 0):
        self.rng = rng
        self.cfg = cfg or GeneratorConfig()
        self.ar = arithmetic
        self.trial = trial

    # scalars and matrices ---------------------------------------------------------
    def coin(self, p: float = 0.5) -> bool:
        return bool(self.rng.random() < p)

    def integer(self, lo: int, hi: int) -> int:
        """Uniform on ``[lo, hi]``."""
        return int(self.rng.integers(lo, hi + 1))

    def dim(self, lo: int = 1, hi: int | None = None) -> int:
        hi = self.cfg.maxDim if hi is None else hi
        return self.integer(lo, max(lo, hi))

    def _rational(self, bound: int):
        num = self.integer(-bound, bound)
        if self.coin(0.25):
            return num, self.integer(1, bound)
        return num, 1

    def scalar(self, bound: int | None = None, complex_prob: float = 0.5) -> Gaussian:
        """Gaussian rational with numerators and denominators bounded by ``bound``."""
        bound = min(self.cfg.entryBound, 3) if bound is None else bound
        a, b = self._rational(bound)
        re = Gaussian(a) / b
        if self.coin(complex_prob):
            c, d = self._rational(bound)
            return re + Gaussian(0, c) / d
        return re

    def matrix(self, rows: int, cols: int, bound: int | None = None, zero_prob: float = 0.3) -> np.ndarray:
        out = self.ar.zeros(rows, cols)
        for i in range(rows):
            for j in range(cols):
                if not self.coin(zero_prob):
                    out[i, j] = self.ar.scalar(self.scalar(bound))
        return out

    def unit_triangular(self, n: int, lower: bool) -> np.ndarray:
        out = self.ar.eye(n)
        for i in range(n):
            for j in range(n):
                if (i > j if lower else i < j) and self.coin(0.6):
                    out[i, j] = self.ar.scalar(Gaussian(self.integer(-2, 2), self.integer(-1, 1)))
        return out

    def invertible(self, n: int) -> np.ndarray:
        """``L U P`` with unit triangular factors: determinant a unit, Gaussian-integer inverse."""
        m = self.unit_triangular(n, True) @ self.unit_triangular(n, False)
        return m[:, self.rng.permutation(n)] if n else m

    def skew_hermitian(self, n: int) -> np.ndarray:
        b = self.matrix(n, n, bound=2, zero_prob=0.4)
        return b - la.ctranspose(b)

    def unitary(self, n: int) -> np.ndarray:
        """Rational unitary by the Cayley transform ``(I - A)^{-1} (I + A)``."""
        if n == 0:
            return self.ar.zeros(0, 0)
        a = self.skew_hermitian(n)
        eye = self.ar.eye(n)
        return la.inverse(self.ar, eye - a) @ (eye + a)

    # spaces ---------------------------------------------------------------------------
    def krein_space(self, dim: int | None = None, kappa: int | None = None, label: str = "") -> KreinSpace:
        """Gram ``P^H diag(I, -I_kappa) P``; the frame ``P^{-1}`` is attached."""
        dim = self.dim() if dim is None else dim
        if kappa is None:
            kappa = self.cfg.kappa if self.cfg.kappa is not None else self.integer(0, dim)
        kappa = min(kappa, dim)
        d = self.ar.eye(dim)
        for k in range(dim - kappa, dim):
            d[k, k] = -d[k, k]
        p = self.invertible(dim)
        gram = la.ctranspose(p) @ d @ p
        frame = Frame(la.inverse(self.ar, p) if dim else p, dim - kappa, kappa)
        return KreinSpace(gram, label, self.ar, frame)

    def hilbert(self, dim: int | None = None, label: str = "") -> KreinSpace:
        return self.krein_space(dim, 0, label)

    # subspaces ------------------------------------------------------------------------
    def _neutral_columns(self, fr: Frame, k: int) -> np.ndarray:
        p, q = fr.pos, fr.neg
        e = self.unitary(p)[:, :k]
        u = self.unitary(q)[:, :k]
        return fr.matrix @ np.concatenate([e, u], axis=0)

    def neutral(self, space: KreinSpace, k: int | None = None) -> Subspace:
        """Random ``k``-dimensional neutral subspace (random ``k`` when omitted)."""
        fr = frame_of(space)
        top = min(fr.pos, fr.neg)
        if k is None:
            k = self.integer(0, top)
        if k > top:
            raise UnbalancedSignature("no neutral subspace of this dimension",
                                      requested=k, positive=fr.pos, negative=fr.neg)
        if k == 0:
            return span(space, self.ar.zeros(space.dim, 0))
        sub = span(space, self._neutral_columns(fr, k))
        if sub.rank != k or not is_neutral(space, sub):
            raise GenerationExhausted("neutral subspace construction failed")
        return sub

    def hyper_maximal_neutral(self, space: KreinSpace) -> Subspace:
        fr = frame_of(space)
        if fr.pos != fr.neg:
            raise UnbalancedSignature("hyper-maximal neutral subspaces need a balanced signature",
                                      positive=fr.pos, negative=fr.neg)
        sub = self.neutral(space, fr.pos)
        if not classify_subspace(space, sub).hyperMaximalNeutral:
            raise GenerationExhausted("hyper-maximal construction failed")
        return sub

    def subspace(self, space: KreinSpace, k: int | None = None) -> Subspace:
        k = self.integer(0, space.dim) if k is None else k
        return span(space, self.matrix(space.dim, k))

    def vector(self, dim: int) -> np.ndarray:
        return self.matrix(dim, 1, zero_prob=0.2)[:, 0]

    # relations ------------------------------------------------------------------------
    def relation(self, x: KreinSpace, y: KreinSpace, k: int | None = None) -> LinearRelation:
        """Random relation; some columns are forced into ``ker`` or ``mul`` shape."""
        n, m = x.dim, y.dim
        k = self.integer(0, n + m) if k is None else k
        cols = self.matrix(n + m, k)
        for j in range(k):
            r = self.rng.random()
            if r < 0.2:
                cols[n:, j] = self.ar.scalar(0)
            elif r < 0.4:
                cols[:n, j] = self.ar.scalar(0)
        return relation(x, y, cols)

    def isometric_relation(self, x: KreinSpace, y: KreinSpace, k: int | None = None) -> LinearRelation:
        rel = LinearRelation(x, y, self.neutral(product_space(x, y), k))
        if not classify_relation(rel).isometric:
            raise GenerationExhausted("isometric relation failed its classifier")
        return rel

    def unitary_relation(self, x: KreinSpace, y: KreinSpace) -> LinearRelation:
        rel = LinearRelation(x, y, self.hyper_maximal_neutral(product_space(x, y)))
        if not classify_relation(rel).unitary:
            raise GenerationExhausted("unitary relation failed its classifier")
        return rel

    def balanced_partner(self, x: KreinSpace, max_dim: int | None = None) -> KreinSpace:
        """A space ``Y`` making ``X x Y`` balanced (``pos X + neg Y = neg X + pos Y``)."""
        max_dim = self.cfg.maxDim if max_dim is None else max_dim
        pos, neg = x.signature
        options = []
        for m in range(0, max_dim + 1):
            twice = m - pos + neg
            if twice % 2 == 0 and 0 <= twice // 2 <= m:
                options.append((m, twice // 2))
        # a zero-dimensional partner only fits a balanced X; prefer non-trivial ones
        nontrivial = [o for o in options if o[0] > 0] or options
        m, kap = nontrivial[self.integer(0, len(nontrivial) - 1)]
        return self.krein_space(m, kap)

    def symmetric_relation(self, k: KreinSpace, self_adjoint: bool = False) -> LinearRelation:
        d = doubled_space(k)
        sub = self.hyper_maximal_neutral(d) if self_adjoint else self.neutral(d)
        return LinearRelation(k, k, sub.within(product_space(k, k)))

    # hyperbolic pairs -------------------------------------------------------------------
    def hyperbolic_pairs(self, space: KreinSpace) -> HyperbolicPairs:
        """Randomized hyperbolic basis of a balanced space of dimension ``2n``."""
        fr = frame_of(space)
        if fr.pos != fr.neg:
            raise UnbalancedSignature("hyperbolic pairs need a balanced signature",
                                      positive=fr.pos, negative=fr.neg)
        n = fr.pos
        ar = self.ar
        if n == 0:
            z = ar.zeros(space.dim, 0)
            return HyperbolicPairs(z, z)
        w = la.block_diag(ar, self.unitary(n), self.unitary(n))
        c = fr.matrix @ w
        half = Gaussian(1, 0) / 2 if ar.exact else 0.5
        b = c[:, :n] + c[:, n:]
        bp = (c[:, :n] - c[:, n:]) * half
        a = self.invertible(n)
        a_inv_h = la.ctranspose(la.inverse(ar, a))
        return HyperbolicPairs(b @ a, bp @ a_inv_h)

    # boundary relations --------------------------------------------------------------------
    def structured_gbr(self, K: KreinSpace, H: KreinSpace, s: int, r: int, t: int, u: int = 0,
                       maximal: bool = True) -> GreensBoundaryRelation:
        """Boundary relation assembled from hyperbolic pairs.

        With pairs ``(b, b')`` of ``K^2`` and ``(c, c')`` of ``H^2`` the graph
        is spanned by ``(b_i, 0)`` for ``i < s`` (``(b_i, c_{r+t+i})`` for
        ``i < u``), ``(b_{s+j}, c_j)`` and ``(b'_{s+j}, c'_j)`` for ``j < r`` and
        ``(0, c_{r+l})`` for ``l < t``.  ``maximal=False`` drops the first group,
        which breaks maximality when ``s > 0``.
        """
        n, m = K.dim, H.dim
        if not (0 <= s <= n and 0 <= r <= n - s and r <= m and 0 <= t <= m - r and 0 <= u <= min(s, m - r - t)):
            raise ValueError("inconsistent structure parameters")
        ar = self.ar
        pk = self.hyperbolic_pairs(doubled_space(K))
        ph = self.hyperbolic_pairs(doubled_space(H))
        zk = ar.zeros(2 * n, 1)[:, 0]
        zh = ar.zeros(2 * m, 1)[:, 0]
        cols = []
        if maximal:
            for i in range(s):
                cols.append((pk.b[:, i], ph.b[:, r + t + i] if i < u else zh))
        for j in range(r):
            cols.append((pk.b[:, s + j], ph.b[:, j]))
            cols.append((pk.bp[:, s + j], ph.bp[:, j]))
        for l in range(t):
            cols.append((zk, ph.b[:, r + l]))
        if not cols:
            vecs = ar.zeros(2 * (n + m), 0)
        else:
            vecs = np.stack([np.concatenate([a, b]) for a, b in cols], axis=1)
        return build_gbr(K, H, vecs)

    def _gbr_spaces(self, kappa_max: int | None, n: int | None, m: int | None, max_dim: int):
        n = self.dim(1, max_dim) if n is None else n
        m = self.dim(1, max_dim) if m is None else m
        top = n if kappa_max is None else min(n, kappa_max)
        kap = self.cfg.kappa if self.cfg.kappa is not None and self.cfg.kappa <= top else self.integer(0, top)
        return self.krein_space(n, kap, "K"), self.hilbert(m, "H")

    def _candidate(self, kind: str, K: KreinSpace, H: KreinSpace) -> GreensBoundaryRelation:
        n, m = K.dim, H.dim
        if kind == "any":
            if self.coin(0.5):
                sub = self.neutral(product_space(doubled_space(K), doubled_space(H)))
                return build_gbr(K, H, sub.basis)
            return self._random_structure(K, H, maximal=self.coin(0.5))
        if kind == "isometricBoundary":
            return self._random_structure(K, H, maximal=True)
        if kind == "unitaryBoundary":
            if self.coin(0.5):
                sub = self.hyper_maximal_neutral(product_space(doubled_space(K), doubled_space(H)))
                return build_gbr(K, H, sub.basis)
            r = self.integer(0, min(n, m))
            s = self.integer(0, n - r)
            return self.structured_gbr(K, H, s, r, m - r, 0, True)
        if kind in ("ordinary", "surjective"):
            return self.structured_gbr(K, H, n - m, m, 0, 0, True)
        raise ValueError(f"unknown kind {kind!r}")

    def _random_structure(self, K, H, maximal: bool) -> GreensBoundaryRelation:
        n, m = K.dim, H.dim
        s = self.integer(0, n)
        r = self.integer(0, min(n - s, m))
        t = self.integer(0, m - r)
        u = self.integer(0, min(s, m - r - t))
        return self.structured_gbr(K, H, s, r, t, u, maximal)

    @staticmethod
    def _accepts(kind: str, g: GreensBoundaryRelation) -> bool:
        if kind == "any":
            return True
        if kind == "surjective":
            return g.gamma.ran.is_full() and check_maximality(g).cond222
        flags = classify_boundary(g)
        return {"isometricBoundary": flags.isometricBoundary, "unitaryBoundary": flags.unitaryBoundary,
                "ordinary": flags.ordinaryTriple}[kind]

    def gbr(self, kind: str = "any", K: KreinSpace | None = None, H: KreinSpace | None = None,
            kappa_max: int | None = None, max_dim: int = 3) -> GreensBoundaryRelation:
        """Boundary relation of the requested kind, confirmed by its classifier.

        Missing spaces are drawn with dimensions in ``[1, max_dim]``; ordinary
        and surjective kinds need ``dim H <= dim K``.
        """
        if kind not in GBR_KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        for _ in range(RETRY_BUDGET):
            k_sp, h_sp = K, H
            if k_sp is None or h_sp is None:
                n = None if K is None else K.dim
                m = None if H is None else H.dim
                if kind in ("ordinary", "surjective") and m is None:
                    n = self.dim(1, max_dim) if n is None else n
                    m = self.dim(1, n)
                gk, gh = self._gbr_spaces(kappa_max, n, m, max_dim)
                k_sp = K if K is not None else gk
                h_sp = H if H is not None else gh
            if kind in ("ordinary", "surjective") and h_sp.dim > k_sp.dim:
                raise GenerationExhausted("ordinary boundary relations need dim H <= dim K",
                                          dimK=k_sp.dim, dimH=h_sp.dim)
            g = self._candidate(kind, k_sp, h_sp)
            if self._accepts(kind, g):
                return g
        raise GenerationExhausted(f"no {kind} boundary relation within the retry budget",
                                  budget=RETRY_BUDGET)

    def self_adjoint_in_side_space(self, K: KreinSpace, H: KreinSpace, symmetric_only: bool = False):
        e = graph_side_space(K, H)
        return self.symmetric_relation(e, self_adjoint=not symmetric_only)
