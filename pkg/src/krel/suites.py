"""Property suites: one generator and one checker per statement.

``generate(gen)`` returns a dict of named objects (spaces, relations,
boundary relations, vectors); ``check(objects)`` returns an :class:`Outcome`.
Checkers use only the objects, so a stored counterexample replays exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import linalg as la
from .errors import DegenerateForm, EmptyRegularSet, NoRationalFrame, PreconditionUnmet
from .generators import Gen
from .green import (
    GreensBoundaryRelation,
    build_gbr,
    check_maximality,
    classify_boundary,
    closure_properties,
    gamma_image,
    inverse_main_transformation,
    inverse_main_transformation_vector,
    is_minimal,
    is_trivial,
    kernel_relation,
    main_transformation,
    main_transformation_vector,
    minimality_consequences,
    mul_component_relation,
    range_density_consequences,
    weyl_family,
    nevanlinna_negative_squares,
)
from .relations import (
    LinearRelation,
    adjoint,
    adjoint_by_definition,
    adjoint_via_companion,
    as_relation,
    classify_relation,
    direct_orthogonal_sum,
    full_relation,
    inverse,
    relation,
    restrict,
    zero_relation,
)
from .scalars import Gaussian
from .spaces import (
    classify_subspace,
    contains,
    doubled_space,
    frame_of,
    graph_side_space,
    inner_product,
    intersect,
    isotropic_part,
    krein_space,
    orthogonal_companion,
    product_space,
    span,
)

__all__ = ["Outcome", "Suite", "SUITES", "SUITE_IDS"]


@dataclass
class Outcome:
    checks: dict
    nonvacuous: bool = True
    stats: dict = field(default_factory=dict)

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


@dataclass(frozen=True)
class Suite:
    id: str
    generate: Callable[[Gen], dict]
    check: Callable[[dict], Outcome]
    fixed_trials: int | None = None


def _imp(a: bool, b: bool) -> bool:
    return (not a) or bool(b)


def _gmax(gen: Gen) -> int:
    return min(gen.cfg.maxDim, 3)


def _symmetric(r: LinearRelation) -> bool:
    return bool(classify_relation(r).symmetric)


def _self_adjoint(r: LinearRelation) -> bool:
    return bool(classify_relation(r).selfAdjoint)


def _unitary(v: LinearRelation) -> bool:
    return adjoint(v) == inverse(v)


# relations between Krein spaces ------------------------------------------------------

def _gen_prop34(gen: Gen) -> dict:
    x = gen.krein_space(label="X")
    y = gen.krein_space(label="Y")
    return {"R": gen.relation(x, y)}


def _check_prop34(o: dict) -> Outcome:
    r = o["R"]
    x, y = r.source, r.target
    by_comp = adjoint_via_companion(r)
    by_def = adjoint_by_definition(r)
    star = by_comp
    star2 = adjoint(star)
    prod_yx = product_space(y, x)
    comp_inv = orthogonal_companion(prod_yx, inverse(r).graph.within(prod_yx))
    comp = orthogonal_companion(r.graph.ambient, r.graph)
    return Outcome({
        "adjointRoutesAgree": by_comp == by_def,
        "adjointOfClosure": adjoint(star2) == star,
        "doubleAdjoint": star2 == r,
        "domCompanionIsMulAdjoint": orthogonal_companion(x, r.dom) == star.mul,
        "kerAdjointIsRanCompanion": star.ker == orthogonal_companion(y, r.ran),
        "inverseCompanion": comp_inv == inverse(LinearRelation(x, y, comp)).graph,
    })


def _gen_prop38(gen: Gen) -> dict:
    x = gen.krein_space(label="X")
    roll = gen.rng.random()
    if roll < 0.4:
        return {"V": gen.isometric_relation(x, gen.krein_space(label="Y"))}
    if roll < 0.7:
        return {"V": gen.unitary_relation(x, gen.balanced_partner(x))}
    return {"V": gen.relation(x, gen.krein_space(label="Y"))}


def _check_prop38(o: dict) -> Outcome:
    v = o["V"]
    cls = classify_subspace(v.graph.ambient, v.graph)
    star, inv = adjoint(v), inverse(v)
    iso = contains(star.graph, inv.graph)
    uni = star == inv
    flags = classify_relation(v)
    return Outcome({
        "isometricIffNeutral": iso == cls.neutral,
        "unitaryIffHyperMaximal": uni == cls.hyperMaximalNeutral,
        "classifierAgrees": flags.isometric == iso and flags.unitary == uni,
    }, stats={"isometric": int(iso), "unitary": int(uni)})


def _gen_prop310(gen: Gen) -> dict:
    k = gen.krein_space(label="K")
    roll = gen.rng.random()
    if roll < 0.35:
        a = gen.symmetric_relation(k)
    elif roll < 0.7:
        a = gen.symmetric_relation(k, self_adjoint=True)
    else:
        a = gen.relation(k, k)
    return {"A": a, "f": gen.vector(2 * k.dim), "g": gen.vector(2 * k.dim)}


def _sigma(ar, n: int) -> np.ndarray:
    minus_i = ar.scalar(Gaussian(0, -1))
    s = ar.zeros(2 * n, 2 * n)
    for j in range(n):
        s[j, n + j] = minus_i
        s[n + j, j] = minus_i
    return s


def _check_prop310(o: dict) -> Outcome:
    a = o["A"]
    k = a.source
    ar = k.arithmetic
    dbl = doubled_space(k)
    prod = product_space(k, k)
    sub2 = a.graph.within(dbl)
    cls = classify_subspace(dbl, sub2)
    star = adjoint(a)
    sym = contains(star.graph, a.graph)
    sa = star == a
    comp = orthogonal_companion(prod, a.graph.within(prod))
    inv = inverse(a).graph.within(prod)
    f, g = o["f"], o["g"]
    lhs = inner_product(dbl, f, g)
    rhs = inner_product(prod, _sigma(ar, k.dim) @ f, g)
    return Outcome({
        "symmetricIffNeutralInDoubled": sym == cls.neutral,
        "symmetricIffInverseInCompanion": sym == contains(comp, inv),
        "selfAdjointIffHyperMaximal": sa == cls.hyperMaximalNeutral,
        "selfAdjointIffInverseIsCompanion": sa == (comp == inv),
        "classifierAgrees": classify_relation(a).symmetric == sym,
        "formIdentity": ar.is_zero(lhs - rhs),
    }, stats={"symmetric": int(sym), "selfAdjoint": int(sa)})


# isometric relations ------------------------------------------------------------------

def _gen_isometric_mix(gen: Gen, unitary: bool) -> dict:
    x = gen.krein_space(label="X")
    if unitary:
        return {"V": gen.unitary_relation(x, gen.balanced_partner(x))}
    return {"V": gen.isometric_relation(x, gen.krein_space(label="Y"))}


def _gen_prop42(gen: Gen) -> dict:
    roll = gen.rng.random()
    if roll < 0.4:
        return _gen_isometric_mix(gen, True)
    x = gen.krein_space(label="X")
    y = gen.krein_space(label="Y")
    if roll < 0.7:
        # largest neutral dimension: dom or ran often full
        fr = product_space(x, y).signature
        return {"V": gen.isometric_relation(x, y, min(fr))}
    return {"V": gen.isometric_relation(x, y)}


def _isometric_consequences(v: LinearRelation, iso_dom: LinearRelation | None = None,
                            ker_rel: LinearRelation | None = None) -> tuple[dict, bool]:
    x, y = v.source, v.target
    ran_nondeg = isotropic_part(y, v.ran).is_zero()
    dom_full, ran_full = v.dom.is_full(), v.ran.is_full()
    if iso_dom is None:
        first = isotropic_part(x, v.dom) == v.ker
    else:
        first = iso_dom == ker_rel
    both = dom_full and ran_full
    checks = {
        "nondegenerateRanGivesIsotropicKer": _imp(ran_nondeg, first),
        "fullRanGivesOperator": _imp(ran_full, v.is_operator()),
        "fullDomGivesInverseOperator": _imp(dom_full, v.ker.is_zero()),
        "fullDomAndRanGiveUnitaryOperator": _imp(both, _unitary(v) and v.is_operator() and v.ker.is_zero()),
    }
    return checks, ran_nondeg or ran_full or dom_full


def _check_prop42(o: dict) -> Outcome:
    checks, nonvac = _isometric_consequences(o["V"])
    return Outcome(checks, nonvac)


def _gen_thm46(gen: Gen) -> dict:
    return _gen_isometric_mix(gen, gen.trial % 7 < 2)


def _unitary_characterization(v: LinearRelation, iso_dom, iso_ran, ker_rel=None, mul_rel=None) -> dict:
    """Shared body of the unitary characterization (relations or boundary relations)."""
    x, y = v.source, v.target
    ker_sub = v.ker if ker_rel is None else ker_rel
    mul_sub = v.mul if mul_rel is None else mul_rel
    uni = _unitary(v)
    comp_ran = orthogonal_companion(y, v.ran) == v.mul
    comp_dom = orthogonal_companion(x, v.dom) == v.ker
    both = v.dom.is_full() and v.ran.is_full()
    return {
        "isotropicEquivalence": (iso_ran == mul_sub) == (iso_dom == ker_sub),
        "unitaryGivesCompanions": _imp(uni, comp_ran and comp_dom),
        "companionsGiveUnitary": _imp(comp_ran and comp_dom, uni),
        "fullDomAndRanGiveStandardUnitary": _imp(both, uni and v.is_operator() and v.ker.is_zero()),
    }


def _check_thm46(o: dict) -> Outcome:
    v = o["V"]
    checks = _unitary_characterization(v, isotropic_part(v.source, v.dom), isotropic_part(v.target, v.ran))
    return Outcome(checks, stats={"unitary": int(_unitary(v))})


# Green's boundary relations -------------------------------------------------------------

def _gen_any_gbr(gen: Gen) -> dict:
    return {"gamma": gen.gbr("any", max_dim=_gmax(gen))}


def _check_lemma26(o: dict) -> Outcome:
    g = o["gamma"]
    g0, g1 = g.components
    both = intersect(g0.ker, g1.ker)
    return Outcome({
        "kerGamma0Symmetric": _symmetric(kernel_relation(g, 0)),
        "kerGamma1Symmetric": _symmetric(kernel_relation(g, 1)),
        "kerGammaSymmetric": _symmetric(g.derived.N),
        "mulGamma0Symmetric": _symmetric(mul_component_relation(g, 0)),
        "mulGamma1Symmetric": _symmetric(mul_component_relation(g, 1)),
        "mulGammaSymmetric": _symmetric(g.derived.N_tilde),
        "kerInComponentKernels": contains(both, g.gamma.ker),
        "kerEqualsComponentKernelsForOperators": _imp(g.gamma.is_operator(), both == g.gamma.ker),
    })


def _check_prop28(o: dict) -> Outcome:
    g = o["gamma"]
    mx = check_maximality(g)
    d = g.derived
    witness = _symmetric(d.S) and adjoint(d.S) == d.T
    return Outcome({
        "cond222IffSymmetricWitness": mx.cond222 == witness,
        "cond223GivesMEqualsS": _imp(mx.cond223, d.M == d.S),
        "cond223GivesCond222": _imp(mx.cond223, mx.cond222),
    }, stats={"cond222": int(mx.cond222)})


def _symmetric_extension(gen: Gen, g: GreensBoundaryRelation) -> LinearRelation:
    """Random ``A`` with ``S <= A <= A+ <= dom Gamma``; falls back to ``A = S``."""
    d = g.derived
    s = d.S
    ar = g.arithmetic
    dom = g.gamma.dom
    cols = []
    current = s.graph
    for j in range(dom.rank):
        cand = span(g.K2, np.concatenate([current.basis, dom.basis[:, j:j + 1]], axis=1))
        if cand.rank > current.rank:
            cols.append(j)
            current = cand
    if not cols:
        return s
    c = dom.basis[:, cols]
    q = la.ctranspose(c) @ g.K2.gram @ c
    try:
        quotient = krein_space(q, arithmetic=ar)
        frame_of(quotient)
        sub = gen.neutral(quotient)
    except (DegenerateForm, NoRationalFrame):
        return s
    if sub.is_zero():
        return s
    return as_relation(span(g.K2, np.concatenate([s.graph.basis, c @ sub.basis], axis=1)), g.K)


def _gen_cor216(gen: Gen) -> dict:
    g = gen.gbr("isometricBoundary", max_dim=_gmax(gen))
    return {"gamma": g, "A": _symmetric_extension(gen, g)}


def _check_cor216(o: dict) -> Outcome:
    g = o["gamma"]
    a = as_relation(o["A"].graph.within(g.K2), g.K)
    s = g.derived.S
    aplus = adjoint(a)
    dom = g.gamma.dom
    hyp = contains(a.graph, s.graph) and contains(aplus.graph, a.graph) and contains(dom, aplus.graph)
    if not hyp:
        return Outcome({}, False)
    sub = restrict(g.gamma, aplus.graph.within(g.K2))
    gt = build_gbr(g.K, g.H, sub.graph.basis)
    return Outcome({
        "gammaIsometric": check_maximality(g).cond222,
        "restrictionIsometric": check_maximality(gt).cond222,
        "restrictionDomain": gt.gamma.dom == aplus.graph,
    }, stats={"properExtension": int(a.graph.rank > s.graph.rank)})


def _gen_prop52(gen: Gen) -> dict:
    kind = ("any", "ordinary", "unitaryBoundary")[gen.integer(0, 2)]
    return {"gamma": gen.gbr(kind, max_dim=_gmax(gen))}


def _check_prop52(o: dict) -> Outcome:
    g = o["gamma"]
    d = g.derived
    checks, nonvac = _isometric_consequences(g.gamma, d.M, d.N)
    return Outcome(checks, nonvac)


def _gen_thm55(gen: Gen) -> dict:
    if gen.trial % 7 < 2:
        kind = "unitaryBoundary"
    else:
        kind = "isometricBoundary" if gen.coin() else "any"
    return {"gamma": gen.gbr(kind, max_dim=_gmax(gen))}


def _check_thm55(o: dict) -> Outcome:
    g = o["gamma"]
    v = g.gamma
    checks = _unitary_characterization(v, isotropic_part(g.K2, v.dom), isotropic_part(g.H2, v.ran))
    return Outcome(checks, stats={"unitary": int(_unitary(v)), "isometric": int(g.maximality.cond222)})


def _gen_cor56(gen: Gen) -> dict:
    gm = _gmax(gen)
    if gen.coin(0.9):
        K = gen.krein_space(gen.dim(1, gm), label="K")
        H = gen.hilbert(gen.dim(1, gm), "H")
        s = gen.integer(max(0, K.dim - H.dim), K.dim)
        return {"gamma": gen.structured_gbr(K, H, s, K.dim - s, 0, 0, gen.coin(0.9))}
    return {"gamma": gen.gbr("any", max_dim=gm)}


def _check_cor56(o: dict) -> Outcome:
    g = o["gamma"]
    d = g.derived
    hyp = isotropic_part(g.H2, g.gamma.ran).is_zero() and check_maximality(g).cond223
    return Outcome({"MEqualsNEqualsS": _imp(hyp, d.M == d.N and d.N == d.S)}, hyp)


def _gen_cor58(gen: Gen) -> dict:
    kind = "ordinary" if gen.coin() else ("any" if gen.coin() else "isometricBoundary")
    return {"gamma": gen.gbr(kind, max_dim=_gmax(gen))}


def _check_cor58(o: dict) -> Outcome:
    g = o["gamma"]
    d = g.derived
    mx = check_maximality(g)
    lhs = g.gamma.ran.is_full() and mx.cond228
    by_definition = (_symmetric(d.S) and adjoint(d.S) == d.T and g.gamma.is_operator()
                     and g.gamma.ran.is_full() and d.N == d.S)
    return Outcome({
        "conditionsIffOrdinaryTriple": lhs == by_definition,
        "flagAgrees": classify_boundary(g).ordinaryTriple == lhs,
        "ordinaryIsOperatorWithKernelS": _imp(lhs, g.gamma.is_operator() and d.N == d.S),
    }, stats={"ordinary": int(lhs)})


def _gen_prop510(gen: Gen) -> dict:
    gm = _gmax(gen)
    return {"gamma": gen.gbr("unitaryBoundary", max_dim=gm), "other": gen.gbr("any", max_dim=gm)}


def _prop510_checks(g: GreensBoundaryRelation, prefix: str) -> dict:
    v = g.gamma
    amb = v.graph.ambient
    uni = _unitary(v)
    c54 = contains(v.graph, orthogonal_companion(amb, v.graph))
    mx = check_maximality(g)
    d = g.derived
    m_tilde = as_relation(isotropic_part(g.H2, v.ran), g.H)
    return {
        prefix + "unitaryIffCompanionCondition": uni == c54,
        prefix + "companionConditionGivesCond223": _imp(c54, mx.cond223),
        prefix + "cond223GivesCond222": _imp(mx.cond223, mx.cond222),
        prefix + "unitaryGivesMEqualsNEqualsS": _imp(uni, d.M == d.N and d.N == d.S),
        prefix + "unitaryGivesTildeIdentities": _imp(uni, m_tilde == d.N_tilde and d.N_tilde == d.S_tilde),
    }


def _check_prop510(o: dict) -> Outcome:
    checks = _prop510_checks(o["gamma"], "")
    checks.update(_prop510_checks(o["other"], "other."))
    return Outcome(checks, _unitary(o["gamma"].gamma))


def _gen_lemma518(gen: Gen) -> dict:
    gm = _gmax(gen)
    k1 = gen.krein_space(gen.dim(1, gm), label="K1")
    k2 = gen.krein_space(gen.dim(1, gm), label="K2")
    roll = gen.rng.random()
    if roll < 0.4:
        a1, a2 = gen.symmetric_relation(k1, True), gen.symmetric_relation(k2, True)
    elif roll < 0.8:
        a1, a2 = gen.symmetric_relation(k1), gen.symmetric_relation(k2)
    else:
        a1, a2 = gen.relation(k1, k1), gen.relation(k2, k2)
    return {"A1": a1, "A2": a2}


def _check_lemma518(o: dict) -> Outcome:
    a1, a2 = o["A1"], o["A2"]
    c = classify_relation(direct_orthogonal_sum(a1, a2))
    c1, c2 = classify_relation(a1), classify_relation(a2)
    return Outcome({
        "symmetricDescends": _imp(c.symmetric, c1.symmetric and c2.symmetric),
        "selfAdjointDescends": _imp(c.selfAdjoint, c1.selfAdjoint and c2.selfAdjoint),
        "symmetricAscends": _imp(c1.symmetric and c2.symmetric, c.symmetric),
    }, bool(c.symmetric))


def _gen_example519(gen: Gen) -> dict:
    return {}


def _check_example519(o: dict) -> Outcome:
    K = krein_space([[-1]], "K")
    H = krein_space([[1]], "H")
    e = graph_side_space(K, H)
    a_tilde = relation(e, e, [[1, 0], [1, 0], [0, 1], [0, 1]])
    a1, a2 = full_relation(K), full_relation(H)
    gamma = inverse_main_transformation(a_tilde, K, H)
    return Outcome({
        "tildeASelfAdjoint": _self_adjoint(a_tilde),
        "A1AdjointIsZero": adjoint(a1) == zero_relation(K),
        "A1NotSymmetric": not _symmetric(a1),
        "A2AdjointIsZero": adjoint(a2) == zero_relation(H),
        "A2NotSymmetric": not _symmetric(a2),
        "gammaUnitary": classify_boundary(gamma).unitaryBoundary,
    })


def _gen_prop520(gen: Gen) -> dict:
    gm = _gmax(gen)
    K = gen.krein_space(gen.dim(1, gm), label="K")
    H = gen.hilbert(gen.dim(1, gm), "H")
    a_tilde = gen.self_adjoint_in_side_space(K, H, symmetric_only=gen.coin())
    other = gen.gbr("unitaryBoundary" if gen.coin() else "any", K=K, H=H)
    size = 2 * (K.dim + H.dim)
    return {"K": K, "H": H, "Atilde": a_tilde, "other": other, "x": gen.vector(size), "y": gen.vector(size)}


def _trivial_checks(g: GreensBoundaryRelation, prefix: str) -> dict:
    cls = classify_boundary(g)
    v = g.gamma
    return {
        prefix + "unitaryIsTrivial": _imp(cls.unitaryBoundary, v.dom == v.ker and v.ran == v.mul),
        prefix + "isometricIsTrivial": _imp(cls.isometricBoundary, is_trivial(g)),
    }


def _check_prop520(o: dict) -> Outcome:
    K, H = o["K"], o["H"]
    n, m = K.dim, H.dim
    ar = K.arithmetic
    x, y = o["x"], o["y"]
    jx = main_transformation_vector(x, n, m)
    jy = main_transformation_vector(y, n, m)
    src = product_space(doubled_space(K), doubled_space(H))
    dst = doubled_space(graph_side_space(K, H))
    checks = {
        "inverseUndoesTransformation": ar.all_zero(inverse_main_transformation_vector(jx, n, m) - x),
        "transformationIsIsometric": ar.is_zero(inner_product(dst, jx, jy) - inner_product(src, x, y)),
    }
    if n == m:
        checks["involution"] = ar.all_zero(main_transformation_vector(jx, n, m) - x)
    a_tilde = o["Atilde"]
    gamma = inverse_main_transformation(a_tilde, K, H)
    flags = classify_boundary(gamma)
    checks["unitaryIffSelfAdjoint"] = flags.unitaryBoundary == _self_adjoint(a_tilde)
    checks["roundTrip"] = main_transformation(gamma) == a_tilde
    other = build_gbr(K, H, o["other"].basis)
    j_other = main_transformation(other)
    checks["greensGivesSymmetric"] = _symmetric(j_other)
    checks["reverseUnitaryIffSelfAdjoint"] = classify_boundary(other).unitaryBoundary == _self_adjoint(j_other)
    checks["trivialFromSymmetric"] = is_trivial(gamma)
    checks.update(_trivial_checks(gamma, ""))
    checks.update(_trivial_checks(other, "other."))
    return Outcome(checks, stats={"unitary": int(flags.unitaryBoundary) + int(classify_boundary(other).unitaryBoundary)})


# Weyl families and minimality ----------------------------------------------------------

def _gen_prop64(gen: Gen) -> dict:
    kind = "unitaryBoundary" if gen.coin(0.7) else "isometricBoundary"
    return {"gamma": gen.gbr(kind, kappa_max=1, max_dim=_gmax(gen))}


def _check_prop64(o: dict) -> Outcome:
    try:
        report = minimality_consequences(o["gamma"])
    except PreconditionUnmet:
        return Outcome({}, False)
    return Outcome(dict(report.checks))


THM66_POINTS = (Gaussian(0, 1), Gaussian(0, 2), Gaussian(1, 1), Gaussian(-1, 2))


def _gen_thm66(gen: Gen) -> dict:
    return {"gamma": gen.gbr("unitaryBoundary", kappa_max=1, max_dim=_gmax(gen))}


def _check_thm66(o: dict) -> Outcome:
    g = o["gamma"]
    kappa = g.K.signature[1]
    if not check_maximality(g).cond222:
        return Outcome({}, False)
    try:
        minimal = is_minimal(g)
    except EmptyRegularSet:
        minimal = False
    if not minimal:
        return Outcome({}, False)
    ops = [p for p in THM66_POINTS if weyl_family(g, p).matrix is not None]
    if not ops:
        return Outcome({}, False)
    best = 0
    for size in range(1, len(ops) + 1):
        for pts in itertools.combinations(ops, size):
            best = max(best, nevanlinna_negative_squares(g, list(pts)))
    key = f"kappa{kappa}"
    return Outcome({
        "countAtMostKappa": best <= kappa,
        "zeroForHilbert": _imp(kappa == 0, best == 0),
    }, stats={key + ".trials": 1, key + ".attained": int(best == kappa)})


# closures and range density --------------------------------------------------------------

def _gen_prop72(gen: Gen) -> dict:
    return _gen_cor56(gen)


def _check_prop72(o: dict) -> Outcome:
    g = o["gamma"]
    if not isotropic_part(g.H2, g.gamma.ran).is_zero():
        return Outcome({}, False)
    return Outcome(dict(closure_properties(g).checks))


def _gen_lemma73(gen: Gen) -> dict:
    gm = _gmax(gen)
    if gen.coin(0.15):
        return {"gamma": gen.gbr("any", max_dim=gm)}
    K = gen.krein_space(gen.dim(1, gm), label="K")
    H = gen.hilbert(gen.dim(1, K.dim), "H")
    return {"gamma": gen.structured_gbr(K, H, K.dim - H.dim, H.dim, 0, 0, gen.coin())}


def _check_lemma73(o: dict) -> Outcome:
    g = o["gamma"]
    if not g.gamma.ran.is_full():
        return Outcome({}, False)
    g0, g1 = g.components
    img0 = gamma_image(g0, g1.ker)
    img1 = gamma_image(g1, g0.ker)
    return Outcome({
        "image0Full": img0.is_full(),
        "image1Full": img1.is_full(),
        "ran0EqualsImage": img0 == g0.ran,
    }, stats={"cond222": int(check_maximality(g).cond222)})


def _gen_prop74(gen: Gen) -> dict:
    kind = "any" if gen.coin(0.15) else "surjective"
    return {"gamma": gen.gbr(kind, max_dim=_gmax(gen))}


def _check_prop74(o: dict) -> Outcome:
    try:
        report = range_density_consequences(o["gamma"])
    except PreconditionUnmet:
        return Outcome({}, False)
    return Outcome(dict(report.checks))


def _suites() -> dict[str, Suite]:
    entries = [
        Suite("lemma2.6", _gen_any_gbr, _check_lemma26),
        Suite("prop2.8", _gen_any_gbr, _check_prop28),
        Suite("cor2.16", _gen_cor216, _check_cor216),
        Suite("prop3.4", _gen_prop34, _check_prop34),
        Suite("prop3.8", _gen_prop38, _check_prop38),
        Suite("prop3.10", _gen_prop310, _check_prop310),
        Suite("prop4.2", _gen_prop42, _check_prop42),
        Suite("thm4.6", _gen_thm46, _check_thm46),
        Suite("prop5.2", _gen_prop52, _check_prop52),
        Suite("thm5.5", _gen_thm55, _check_thm55),
        Suite("cor5.6", _gen_cor56, _check_cor56),
        Suite("cor5.8", _gen_cor58, _check_cor58),
        Suite("prop5.10", _gen_prop510, _check_prop510),
        Suite("lemma5.18", _gen_lemma518, _check_lemma518),
        Suite("example5.19", _gen_example519, _check_example519, fixed_trials=1),
        Suite("prop5.20", _gen_prop520, _check_prop520),
        Suite("prop6.4", _gen_prop64, _check_prop64),
        Suite("thm6.6", _gen_thm66, _check_thm66),
        Suite("prop7.2", _gen_prop72, _check_prop72),
        Suite("lemma7.3", _gen_lemma73, _check_lemma73),
        Suite("prop7.4", _gen_prop74, _check_prop74),
    ]
    return {s.id: s for s in entries}


SUITES = _suites()
SUITE_IDS = tuple(SUITES)
