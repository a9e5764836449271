import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from helpers import columns, mat, space, vec
from krel import linalg as la
from krel.errors import AmbientMismatch, DegenerateForm, DimensionMismatch, NotHermitian, NotHilbert
from krel.generators import Gen, GeneratorConfig
from krel.scalars import EXACT, Gaussian, float_mode, format_scalar
from krel.spaces import (
    classify_subspace,
    contains,
    doubled_space,
    frame_of,
    full_subspace,
    graph_side_space,
    hilbert_space,
    inner_product,
    intersect,
    isotropic_part,
    negative_index,
    orthogonal_companion,
    positive_index,
    product_space,
    span,
    subspace_sum,
    zero_subspace,
)
from krel.serialize import encode_matrix


def _gen(seed, max_dim=6):
    return Gen(np.random.default_rng(seed), GeneratorConfig(seed=seed, maxDim=max_dim))


seeds = st.integers(0, 2 ** 32 - 1)


# construction -----------------------------------------------------------------------

def test_rejects_non_hermitian_gram():
    with pytest.raises(NotHermitian):
        space([["1", "i"], ["i", "1"]])


def test_rejects_singular_gram():
    with pytest.raises(DegenerateForm):
        space([["1", "1"], ["1", "1"]])
    with pytest.raises(DegenerateForm):
        space([[1, 0], [0, 1e-14]], ar=float_mode(1e-9))


def test_rejects_non_square_gram():
    with pytest.raises(DimensionMismatch):
        space([["1", "0"]])


def test_spaces_compare_by_identity():
    a, b = hilbert_space(2), hilbert_space(2)
    assert a is not b and a != b
    assert a == a


# inner products ---------------------------------------------------------------------

@pytest.mark.parametrize("gram,expected", [([["1"]], 1), ([["-1"]], -1)])
def test_inner_product_on_lines(gram, expected):
    assert inner_product(space(gram), vec(["1"]), vec(["1"])) == Gaussian(expected)


def test_inner_product_dimension_check():
    with pytest.raises(DimensionMismatch):
        inner_product(hilbert_space(2), vec(["1"]), vec(["1", "0"]))


@given(seeds)
def test_inner_product_is_hermitian_sesquilinear(seed):
    g = _gen(seed)
    k = g.krein_space()
    x, y, w = g.vector(k.dim), g.vector(k.dim), g.vector(k.dim)
    a = g.scalar()
    assert inner_product(k, x, y) == inner_product(k, y, x).conjugate()
    assert inner_product(k, x * a + w, y) == a * inner_product(k, x, y) + inner_product(k, w, y)
    assert inner_product(k, x, y * a) == a.conjugate() * inner_product(k, x, y)
    assert format_scalar(inner_product(k, x, y)) == oracle.fmt(oracle.inner(k.gram, x, y))


# indices ----------------------------------------------------------------------------

def test_indices_by_inspection():
    assert negative_index(hilbert_space(2)) == 0
    assert negative_index(space([["1", "0"], ["0", "-1"]])) == 1


@given(seeds)
def test_index_sum_and_products(seed):
    g = _gen(seed, 4)
    x, y = g.krein_space(), g.krein_space()
    assert positive_index(x) + negative_index(x) == x.dim
    d = doubled_space(x)
    assert negative_index(d) == positive_index(d) == x.dim
    p = product_space(x, y)
    assert negative_index(p) == negative_index(x) + positive_index(y)
    assert (positive_index(x), negative_index(x)) == oracle.inertia(x.gram)


def test_doubled_gram_blocks():
    assert encode_matrix(doubled_space(hilbert_space(1)).gram) == [["0+0*i", "0-1*i"], ["0+1*i", "0+0*i"]]
    assert encode_matrix(doubled_space(space([["-1"]])).gram) == [["0+0*i", "0+1*i"], ["0-1*i", "0+0*i"]]


def test_product_of_lines():
    p = product_space(hilbert_space(1), hilbert_space(1))
    assert encode_matrix(p.gram) == [["1+0*i", "0+0*i"], ["0+0*i", "-1+0*i"]]


@given(seeds)
def test_product_components_are_orthogonal(seed):
    g = _gen(seed, 4)
    x, y = g.krein_space(), g.krein_space()
    p = product_space(x, y)
    u = np.concatenate([g.vector(x.dim), EXACT.zeros(y.dim, 1).reshape(-1)])
    v = np.concatenate([EXACT.zeros(x.dim, 1).reshape(-1), g.vector(y.dim)])
    assert inner_product(p, u, v) == Gaussian(0)


def test_graph_side_space():
    e = graph_side_space(space([["-1"]]), hilbert_space(1))
    assert encode_matrix(e.gram) == [["-1+0*i", "0+0*i"], ["0+0*i", "1+0*i"]]
    assert EXACT.equal(graph_side_space(hilbert_space(1), hilbert_space(1)).gram, EXACT.eye(2))
    with pytest.raises(NotHilbert):
        graph_side_space(hilbert_space(1), space([["-1"]]))


@given(seeds)
def test_graph_side_space_index(seed):
    g = _gen(seed, 4)
    k, h = g.krein_space(), g.hilbert()
    assert negative_index(graph_side_space(k, h)) == negative_index(k)


@given(seeds)
def test_frames_diagonalize(seed):
    k = _gen(seed).krein_space()
    fr = frame_of(k)
    c = fr.matrix
    d = la.ctranspose(c) @ k.gram @ c
    signs = [Gaussian(1)] * fr.pos + [Gaussian(-1)] * fr.neg
    assert EXACT.equal(d, np.diag(np.array(signs, dtype=object)))


# subspaces --------------------------------------------------------------------------

def test_companion_edges():
    k = hilbert_space(3)
    assert orthogonal_companion(k, zero_subspace(k)) == full_subspace(k)
    assert orthogonal_companion(k, full_subspace(k)).is_zero()


@given(seeds)
def test_companion_properties(seed):
    g = _gen(seed)
    k = g.krein_space()
    a = g.subspace(k)
    c = orthogonal_companion(k, a)
    assert a.rank + c.rank == k.dim
    assert orthogonal_companion(k, c) == a
    assert EXACT.all_zero(la.ctranspose(c.basis) @ k.gram @ a.basis) if a.rank and c.rank else True
    assert oracle.same_span(oracle.to_sym(c.basis), oracle.companion(k.gram, a.basis)) if a.rank else c.is_full()


def test_isotropic_part_examples():
    d = space([["1", "0"], ["0", "-1"]])
    line = span(d, columns([["1", "1"]]))
    assert isotropic_part(d, line) == line
    h = hilbert_space(2)
    assert isotropic_part(h, span(h, columns([["1", "0"]]))).is_zero()
    assert isotropic_part(h, full_subspace(h)).is_zero()


def test_classify_examples():
    d = space([["1", "0"], ["0", "-1"]])
    cls = classify_subspace(d, span(d, columns([["1", "1"]])))
    assert cls.neutral and cls.hyperMaximalNeutral and not cls.nonDegenerate
    z = classify_subspace(d, zero_subspace(d))
    assert z.neutral and not z.hyperMaximalNeutral
    h = hilbert_space(2)
    assert classify_subspace(h, span(h, columns([["1", "0"]]))).nonDegenerate


@given(seeds)
def test_hyper_maximal_iff_self_companion(seed):
    g = _gen(seed, 4)
    k = doubled_space(g.krein_space())
    a = g.hyper_maximal_neutral(k) if g.coin() else g.subspace(k)
    cls = classify_subspace(k, a)
    assert cls.hyperMaximalNeutral == (orthogonal_companion(k, a) == a)
    if cls.hyperMaximalNeutral:
        assert cls.neutral and 2 * a.rank == k.dim


@given(seeds)
def test_lattice(seed):
    g = _gen(seed)
    k = g.krein_space()
    a, b = g.subspace(k), g.subspace(k)
    s, i = subspace_sum(a, b), intersect(a, b)
    assert s.rank == a.rank + b.rank - i.rank
    assert intersect(a, a) == a and subspace_sum(a, a) == a
    assert contains(s, a) and contains(a, i) and contains(b, i)
    assert s.rank == oracle.rank(oracle.to_sym(np.concatenate([a.basis, b.basis], axis=1))) if s.rank else True


def test_coordinate_lines_meet_in_zero():
    h = hilbert_space(2)
    assert intersect(span(h, columns([["1", "0"]])), span(h, columns([["0", "1"]]))).is_zero()


@given(seeds)
def test_canonical_form_unique(seed):
    g = _gen(seed)
    k = g.krein_space()
    a = g.subspace(k)
    if not a.rank:
        return
    mix = g.invertible(a.rank)
    b = span(k, a.basis @ mix)
    assert b.pivots == a.pivots and np.all(b.basis == a.basis)


def test_ambient_mismatch():
    a, b = hilbert_space(2), hilbert_space(3)
    with pytest.raises(AmbientMismatch):
        intersect(zero_subspace(a), zero_subspace(b))
    with pytest.raises(DimensionMismatch):
        span(a, mat([["1"], ["0"], ["0"]]))
