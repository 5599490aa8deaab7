import itertools

import pytest

from holocollapse.gadgets import (
    CROSSOVER_EDGES,
    crossover,
    crossover_gadget,
    edge_weight,
    exact_one,
    matching_gadget,
    planar_drawing,
)
from holocollapse.graph import UnderlyingGraph
from holocollapse.holant import evaluate, gadget_signature
from holocollapse.matchgate import pfaffian_by_matchings
from holocollapse.scalar import ONE, ZERO, Scalar


def test_exact_one_values():
    f = exact_one(3)
    for x, v in f.items():
        assert v == (ONE if sum(x) == 1 else ZERO)


def test_edge_weight():
    assert edge_weight(5).flat() == [ONE, ZERO, ZERO, Scalar(5)]


def test_crossover_values():
    # nonzero exactly on the even-parity inputs, with -1 at 1111
    c = crossover()
    support = {x: v for x, v in c.items() if v}
    assert support == {(0, 0, 0, 0): 1, (0, 1, 0, 1): 1, (1, 0, 1, 0): 1, (1, 1, 1, 1): -1}


def test_crossover_gadget_realizes_crossover():
    assert gadget_signature(crossover_gadget()) == crossover()


def test_crossover_gadget_against_matching_enumeration():
    # the boundary value at x counts matchings of the graph with vertices where x_k = 1 removed
    g = UnderlyingGraph(6, {(i, j): w for i, j, w in CROSSOVER_EDGES})
    for x in itertools.product((0, 1), repeat=4):
        keep = [v for v in range(6) if v >= 4 or not x[v]]
        if len(keep) % 2:
            continue
        total = ZERO
        for m in _matchings(keep):
            term = ONE
            for i, j in m:
                term = term * g.weight(i, j) if (i, j) in g.weights or (j, i) in g.weights else ZERO
            total = total + (term if term == ZERO else _edge_product(g, m))
        assert gadget_signature(crossover_gadget())[x] == total


def _edge_product(g, m):
    out = ONE
    for i, j in m:
        out = out * g.weights[(min(i, j), max(i, j))]
    return out


def _matchings(vs):
    if not vs:
        yield []
        return
    a, rest = vs[0], vs[1:]
    for k, b in enumerate(rest):
        for m in _matchings(rest[:k] + rest[k + 1:]):
            yield [(a, b)] + m


def test_matching_gadget_counts_weighted_matchings():
    edges = [(0, 1, 2), (1, 2, 3), (2, 3, 5), (3, 0, 7), (0, 2, 11)]
    inst = matching_gadget(4, edges)
    assert evaluate(inst) == 2 * 5 + 3 * 7


def test_isolated_vertex_rejected():
    with pytest.raises(ValueError):
        matching_gadget(3, [(0, 1, 1)])
    with pytest.raises(ValueError):
        planar_drawing(UnderlyingGraph(3, {(0, 1): 1}))


def test_planar_drawing_of_k4_counts_with_crossing_signs():
    g = UnderlyingGraph(4, {(0, 1): 2, (0, 2): 3, (0, 3): 5, (1, 2): 7, (1, 3): 11, (2, 3): 13})
    drawing = planar_drawing(g)
    assert drawing.crossings == 1 and drawing.segments == 8
    # the crossing matching (0,2)(1,3) enters with a minus sign
    assert evaluate(drawing.instance, max_bits=64) == 2 * 13 - 3 * 11 + 5 * 7
    assert evaluate(drawing.instance, max_bits=64) == pfaffian_by_matchings(g.skew_matrix(), "crossing")


def test_drawing_does_not_depend_on_jitter():
    g = UnderlyingGraph(6, {(0, 3): 1, (1, 4): 2, (2, 5): 3, (0, 2): 1, (3, 5): -1})
    values = {evaluate(planar_drawing(g, seed=k).instance, max_bits=64) for k in range(3)}
    assert len(values) == 1
