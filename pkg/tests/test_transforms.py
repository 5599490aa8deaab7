import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from holocollapse import linalg
from holocollapse.graph import UnderlyingGraph
from holocollapse.matchgate import is_matchgate, signature_from_graph
from holocollapse.scalar import Scalar
from holocollapse.tensor import MatrixView, rank
from holocollapse.transforms import (
    Bar,
    Exchange,
    Flip,
    GlobalFactor,
    Side,
    Slash,
    apply,
    apply_log,
    apply_matrix,
    exchange_normalized,
    invert,
    log_matrix,
    padded_matrix,
    predict_graph,
    step_matrix,
)

from strategies import bipartite_graphs, boolean_views, graphs, nonzero_scalars, real_scalars, scalars

W = Scalar(3, -1)


@pytest.mark.parametrize("step,expected", [
    (Flip(Side.INPUT, 0), [[0, 1], [1, 0]]),
    (Exchange(Side.INPUT, 0), [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]]),
    (Bar(Side.INPUT, 0, W), [[1, 0, 0, W], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    (Slash(Side.INPUT, 0, W), [[1, 0, 0, 0], [0, 1, 0, 0], [0, W, 1, 0], [0, 0, 0, 1]]),
    (GlobalFactor(W), [[W]]),
])
def test_step_matrices(step, expected):
    assert linalg.equal(step_matrix(step).matrix(), linalg.as_matrix(expected))


def test_side_accepts_strings():
    assert Flip("out", 1) == Flip(Side.OUTPUT, 1)


def test_zero_global_factor_rejected():
    with pytest.raises(ValueError):
        GlobalFactor(0)


def test_position_out_of_range():
    mat = linalg.identity(4)
    with pytest.raises(ValueError):
        apply_matrix(Exchange(Side.INPUT, 1), mat)
    with pytest.raises(ValueError):
        apply_matrix(Flip(Side.OUTPUT, 2), mat)


def test_non_boolean_view_rejected():
    view = MatrixView.from_matrix(linalg.identity(3), (3,), (3,))
    with pytest.raises(ValueError):
        apply(Flip(Side.INPUT, 0), view)


@given(boolean_views(max_bits=4).filter(lambda v: v.t >= 1))
def test_output_flip_at_last_position_swaps_lowest_column_bit(view):
    mat = view.matrix()
    got = apply_matrix(Flip(Side.OUTPUT, view.t - 1), mat)
    cols = [c ^ 1 for c in range(mat.shape[1])]
    assert linalg.equal(got, mat[:, cols])


@given(boolean_views(max_bits=4).filter(lambda v: v.s >= 1))
def test_input_flip_at_first_position_swaps_highest_row_bit(view):
    mat = view.matrix()
    top = 1 << (view.s - 1)
    got = apply_matrix(Flip(Side.INPUT, 0), mat)
    assert linalg.equal(got, mat[[r ^ top for r in range(mat.shape[0])], :])


def _step(kind, side, pos, w):
    if kind == "flip":
        return Flip(side, pos)
    if kind == "exch":
        return Exchange(side, pos)
    if kind == "bar":
        return Bar(side, pos, w)
    if kind == "slash":
        return Slash(side, pos, w)
    return GlobalFactor(w)


@st.composite
def steps_for(draw, s, t):
    kinds = ["gf"]
    if s >= 1 or t >= 1:
        kinds.append("flip")
    if s >= 2 or t >= 2:
        kinds += ["exch", "bar", "slash"]
    kind = draw(st.sampled_from(kinds))
    w = draw(nonzero_scalars)
    if kind == "gf":
        return GlobalFactor(w)
    need = 1 if kind == "flip" else 2
    sides = [side for side, k in ((Side.INPUT, s), (Side.OUTPUT, t)) if k >= need]
    side = draw(st.sampled_from(sides))
    k = s if side is Side.INPUT else t
    return _step(kind, side, draw(st.integers(0, k - need)), w)


@st.composite
def view_and_log(draw, length=5):
    view = draw(boolean_views(max_bits=4))
    log = tuple(draw(steps_for(view.s, view.t)) for _ in range(length))
    return view, log


@given(view_and_log())
def test_inverse_log_round_trip(case):
    view, log = case
    assert apply_log(invert(log), apply_log(log, view)) == view
    assert apply_log(log, apply_log(invert(log), view)) == view


@given(view_and_log())
def test_rank_preserved(case):
    view, log = case
    assert rank(apply_log(log, view)) == rank(view)


@given(view_and_log(length=1))
def test_padded_matrix_agrees_with_action(case):
    view, (step,) = case
    mat = view.matrix()
    got = apply_matrix(step, mat)
    if isinstance(step, GlobalFactor):
        assert linalg.equal(got, mat * step.c)
    elif step.side is Side.INPUT:
        assert linalg.equal(got, linalg.matmul(padded_matrix(step, view.s), mat))
    else:
        assert linalg.equal(got, linalg.matmul(mat, padded_matrix(step, view.t).T))


@given(view_and_log(length=4))
def test_log_matrices_factor_the_action(case):
    view, log = case
    b = log_matrix(log, view.s, Side.INPUT)
    c = log_matrix(log, view.t, Side.OUTPUT)
    # each global factor is counted on both sides, so divide one copy back out
    scale = Scalar(1)
    for step in log:
        if isinstance(step, GlobalFactor):
            scale = scale * step.c
    got = apply_log(log, view).matrix()
    assert linalg.equal(got * scale, linalg.matmul(linalg.matmul(b, view.matrix()), c))


def test_invert_example():
    w = Scalar(2, 1)
    log = (Flip(Side.INPUT, 0), Bar(Side.OUTPUT, 1, -w))
    assert invert(log) == (Bar(Side.OUTPUT, 1, w), Flip(Side.INPUT, 0))
    assert invert((GlobalFactor(4),)) == (GlobalFactor(Scalar(1, 0) / 4),)


@given(boolean_views(max_bits=4).filter(lambda v: v.s >= 2))
def test_exchange_twice_is_identity(view):
    step = Exchange(Side.INPUT, view.s - 2)
    assert apply(step, apply(step, view)) == view


@given(graphs(n_min=2, n_max=6), st.data())
def test_bar_zeroes_one_weight(g, data):
    s = data.draw(st.integers(0, g.n))
    view = MatrixView(signature_from_graph(g), s)
    side, k = (Side.INPUT, s) if s >= 2 else (Side.OUTPUT, g.n - s)
    if k < 2:
        return
    pos = data.draw(st.integers(0, k - 2))
    i = pos if side is Side.INPUT else g.n - 2 - pos
    step = Bar(side, pos, -g.weight(i, i + 1))
    out = apply(step, view)
    res = is_matchgate(out.sig)
    assert res and res.graph.weight(i, i + 1) == 0
    assert out.sig == signature_from_graph(predict_graph(step, g, s))


@given(graphs(n_min=2, n_max=6), st.data())
def test_exchange_with_sign_matches_prediction(g, data):
    s = data.draw(st.integers(0, g.n))
    sides = [side for side, k in ((Side.INPUT, s), (Side.OUTPUT, g.n - s)) if k >= 2]
    if not sides:
        return
    side = data.draw(st.sampled_from(sides))
    k = s if side is Side.INPUT else g.n - s
    pos = data.draw(st.integers(0, k - 2))
    log = exchange_normalized(side, pos)
    out = apply_log(log, MatrixView(signature_from_graph(g), s))
    assert out.sig == signature_from_graph(predict_graph(log[0], g, s))


@given(bipartite_graphs(), real_scalars, st.data())
def test_slash_matches_prediction(g, w, data):
    s, t = g.split, g.t
    sides = [side for side, k in ((Side.INPUT, s), (Side.OUTPUT, t)) if k >= 2]
    if not sides:
        return
    side = data.draw(st.sampled_from(sides))
    k = s if side is Side.INPUT else t
    step = Slash(side, data.draw(st.integers(0, k - 2)), w)
    out = apply(step, MatrixView(signature_from_graph(g), s))
    assert out.sig == signature_from_graph(predict_graph(step, g, s))


@given(graphs(n_max=6), st.data())
def test_flip_keeps_matchgate_property(g, data):
    s = data.draw(st.integers(0, g.n))
    side = Side.INPUT if s else Side.OUTPUT
    k = s if s else g.n
    out = apply(Flip(side, data.draw(st.integers(0, k - 1))), MatrixView(signature_from_graph(g), s))
    assert is_matchgate(out.sig)


def test_prediction_unsupported_step():
    with pytest.raises(ValueError):
        predict_graph(Flip(Side.INPUT, 0), UnderlyingGraph(2, {(0, 1): 1}), 1)


@given(scalars)
def test_global_factor_scales(c):
    mat = linalg.identity(2)
    if c:
        assert linalg.equal(apply_matrix(GlobalFactor(c), mat), np.diag([c, c]).astype(object))
