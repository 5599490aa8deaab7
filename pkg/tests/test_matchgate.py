import itertools
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from holocollapse import linalg
from holocollapse.gadgets import crossover, crossover_gadget, exact_one, planar_drawing
from holocollapse.graph import UnderlyingGraph
from holocollapse.holant import gadget_signature
from holocollapse.matchgate import (
    anchor,
    extract_core,
    is_matchgate,
    multiply_introduced,
    pfaffian,
    pfaffian_by_matchings,
    pfaffian_by_permutations,
    pfaffian_of_matrix,
    signature_from_graph,
)
from holocollapse.sampling import graph, signature
from holocollapse.scalar import ONE, ZERO, Scalar
from holocollapse.tensor import MatrixView, Signature, matrix_product
from holocollapse.transforms import apply_log, invert

from strategies import bipartite_graphs, graphs, matrices, nonzero_scalars, real_scalars, scalars


def test_pfaffian_small():
    w = Scalar(3, 2)
    assert pfaffian(UnderlyingGraph(2, {(0, 1): w})) == w
    assert pfaffian(UnderlyingGraph(3, {(0, 1): 1, (1, 2): 2, (0, 2): 5})) == ZERO
    assert pfaffian(UnderlyingGraph(0)) == ONE


@given(st.lists(scalars, min_size=6, max_size=6))
def test_pfaffian_four_vertices(ws):
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    g = UnderlyingGraph(4, dict(zip(pairs, ws)))
    w = dict(zip(pairs, ws))
    expected = w[0, 1] * w[2, 3] - w[0, 2] * w[1, 3] + w[0, 3] * w[1, 2]
    assert pfaffian(g) == expected
    assert pfaffian_by_matchings(g.skew_matrix(), "crossing") == expected


@given(graphs(n_min=2, n_max=8))
def test_pfaffian_squared_is_determinant(g):
    a = g.skew_matrix()
    pf = pfaffian(g)
    assert pf * pf == linalg.det(a)


@given(graphs(n_min=2, n_max=6))
def test_pfaffian_oracles_agree(g):
    a = g.skew_matrix()
    pf = pfaffian_of_matrix(a)
    assert pfaffian_by_matchings(a, "permutation") == pf
    assert pfaffian_by_matchings(a, "crossing") == pf


def test_literal_permutation_sum_overcounts(rng):
    for half in (1, 2, 3):
        g = graph(rng, 2 * half, density=1.0)
        assert pfaffian_by_permutations(g.skew_matrix()) == pfaffian(g) * (2**half * factorial(half))


def test_unknown_sign_rule():
    with pytest.raises(ValueError):
        pfaffian_by_matchings(linalg.zeros(2, 2), "bogus")


@given(graphs(n_max=6))
def test_signature_basics(g):
    sig = signature_from_graph(g)
    n = g.n
    assert sig[(1,) * n] == ONE
    for i, j in itertools.combinations(range(n), 2):
        z = [1] * n
        z[i] = z[j] = 0
        assert sig[tuple(z)] == g.weight(i, j)
    for x, v in sig.items():
        if (n - sum(x)) % 2:
            assert v == ZERO


@given(bipartite_graphs())
def test_bipartite_balance(g):
    sig = signature_from_graph(g)
    s = g.split
    for x, v in sig.items():
        if s - sum(x[:s]) != g.t - sum(x[s:]):
            assert v == ZERO


def test_signature_matches_planar_drawing(rng):
    # full signature of K4 against the drawing with crossovers, evaluated by enumeration
    g = graph(rng, 4, density=1.0)
    drawing = planar_drawing(g, dangling=True)
    assert drawing.crossings == 1
    got = gadget_signature(drawing.instance, max_bits=64)
    assert got == signature_from_graph(g)
    assert got[(0, 0, 0, 0)] == pfaffian(g)


def test_signature_matches_planar_drawing_six(rng):
    g = graph(rng, 6, density=0.7)
    drawing = planar_drawing(g, dangling=True, seed=3)
    assert gadget_signature(drawing.instance, max_bits=64) == signature_from_graph(g)


def test_core_of_crossover_at_zero():
    core = extract_core(crossover(), at=(0, 0, 0, 0))
    assert core.anchor_value == ONE
    weight_two = [y for y in core.values if sum(y) == 2]
    assert len(weight_two) == 6
    assert {y for y in weight_two if core.values[y]} == {(0, 1, 0, 1), (1, 0, 1, 0)}


def test_anchor_prefers_all_ones():
    assert anchor(crossover()) == (1, 1, 1, 1)
    assert anchor(exact_one(3)) == (0, 0, 1)


@given(graphs(n_max=6))
def test_core_of_introduced_matchgate(g):
    core = extract_core(signature_from_graph(g))
    assert core.anchor == (1,) * g.n and core.anchor_value == ONE


def test_core_rejects_zero():
    with pytest.raises(ValueError):
        extract_core(Signature.zeros((2, 2)))
    with pytest.raises(ValueError):
        extract_core(crossover(), at=(1, 0, 0, 0))


def test_crossover_is_matchgate():
    res = is_matchgate(crossover())
    assert res
    rebuilt = apply_log(invert(res.log), MatrixView(signature_from_graph(res.graph), 4)).sig
    assert rebuilt == crossover()
    # the 6-vertex realization computes the same function
    assert gadget_signature(crossover_gadget()) == rebuilt


def test_exact_one_is_matchgate():
    assert is_matchgate(exact_one(3))
    assert is_matchgate(Signature.zeros((2, 2, 2)))


def test_dense_tensor_fails_with_witness(rng):
    f = signature(rng, (2,) * 4)
    res = is_matchgate(f)
    assert not res
    ok, mismatch = res
    assert not ok and len(mismatch) == 4


@given(graphs(n_max=6))
def test_introduced_matchgates_pass_with_identity_normalization(g):
    res = is_matchgate(signature_from_graph(g))
    assert res and res.log == () and res.graph.weights == g.weights


@given(graphs(n_max=5), nonzero_scalars)
def test_scaled_matchgate_passes(g, c):
    assert is_matchgate(signature_from_graph(g).scale(c))


def _identity_matching(k: int) -> UnderlyingGraph:
    return UnderlyingGraph.from_weight_matrix(linalg.identity(k))


@given(bipartite_graphs())
def test_multiply_by_identity(g):
    assert multiply_introduced(g, _identity_matching(g.t)) == g


@given(matrices(3, 3, real_scalars), matrices(3, 3, real_scalars))
def test_product_law(w1, w2):
    g1, g2 = UnderlyingGraph.from_weight_matrix(w1), UnderlyingGraph.from_weight_matrix(w2)
    prod = multiply_introduced(g1, g2)
    lhs = MatrixView(signature_from_graph(prod), 3)
    rhs = matrix_product(MatrixView(signature_from_graph(g1), 3), MatrixView(signature_from_graph(g2), 3))
    assert lhs == rhs
    mat = lhs.matrix()
    # last row and column vanish except the all-ones corner
    assert mat[7, 7] == ONE
    assert all(mat[7, c] == ZERO for c in range(7)) and all(mat[r, 7] == ZERO for r in range(7))
    # the block on {011, 101, 110} is the weight-matrix product
    idx = [0b011, 0b101, 0b110]
    block = mat[[[i] for i in idx], idx]
    assert linalg.equal(block, linalg.matmul(w1, w2))


def test_multiply_dimension_mismatch():
    g1 = UnderlyingGraph.from_weight_matrix(linalg.identity(2))
    g2 = UnderlyingGraph.from_weight_matrix(linalg.identity(3))
    with pytest.raises(ValueError):
        multiply_introduced(g1, g2)
