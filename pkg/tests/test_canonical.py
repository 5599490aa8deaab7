import pytest
from hypothesis import given
from hypothesis import strategies as st

from holocollapse import linalg
from holocollapse.canonical import CanonicalForm, canonicalize, reconstruct, to_underlying_graph
from holocollapse.gadgets import crossover
from holocollapse.matchgate import NotAMatchgateError, is_matchgate, signature_from_graph
from holocollapse.sampling import signature
from holocollapse.scalar import ONE, Scalar
from holocollapse.tensor import MatrixView, Signature, rank
from holocollapse.transforms import Flip, GlobalFactor, Side, apply_log, log_matrix

from strategies import graphs, nonzero_scalars


@st.composite
def matchgate_views(draw, n_max=7):
    """Introduced matchgates with random flips and a global factor, split anywhere."""
    g = draw(graphs(n_min=1, n_max=n_max))
    s = draw(st.integers(0, g.n))
    flips = draw(st.lists(st.integers(0, g.n - 1), max_size=2))
    c = draw(nonzero_scalars)
    log = tuple(Flip(Side.INPUT, p) for p in flips) + (GlobalFactor(c),)
    whole = apply_log(log, MatrixView(signature_from_graph(g), g.n)).sig
    return MatrixView(whole, s)


def test_zero_signature():
    form = canonicalize(MatrixView(Signature.zeros((2,) * 3), 1))
    assert form.zero and form.r == 0
    assert reconstruct(form).is_zero()


def test_form_validation():
    with pytest.raises(ValueError):
        CanonicalForm(1, 1, 2, (ONE, ONE))
    with pytest.raises(ValueError):
        CanonicalForm(2, 2, 1, (Scalar(0),))
    with pytest.raises(ValueError):
        CanonicalForm(2, 2, 0, zero=True, row_log=(GlobalFactor(2),))


def test_empty_matching_is_not_zero():
    form = CanonicalForm(2, 1, 0)
    assert not form.zero
    assert rank(form.matching_view()) == 1


@given(st.integers(0, 3), st.integers(0, 3), st.lists(nonzero_scalars, min_size=3, max_size=3))
def test_matching_is_a_fixed_point(s, t, ws):
    r = min(s, t)
    target = CanonicalForm(s, t, r, tuple(ws[:r]))
    form = canonicalize(target.matching_view())
    assert (form.r, form.weights) == (r, target.weights)
    assert apply_log(form.row_log + form.col_log, target.matching_view()) == target.matching_view()


@given(matchgate_views())
def test_round_trip_and_rank(view):
    form = canonicalize(view)
    assert reconstruct(form) == view.sig
    assert rank(view) == 2**form.r
    assert apply_log(form.row_log + form.col_log, view) == form.matching_view()


@given(matchgate_views(n_max=6))
def test_log_matrices_factor_the_form(view):
    form = canonicalize(view)
    b = log_matrix(form.row_log, view.s, Side.INPUT)
    c = log_matrix(form.col_log, view.t, Side.OUTPUT)
    got = linalg.matmul(linalg.matmul(b, view.matrix()), c)
    assert linalg.equal(got, form.matching_view().matrix())


@given(matchgate_views(n_max=6))
def test_every_intermediate_is_a_matchgate(view):
    seen = []

    def observe(current, steps):
        seen.append(steps)
        assert is_matchgate(current.sig)

    form = canonicalize(view, observer=observe)
    assert len(seen) >= 1 or not (form.row_log or form.col_log)


@given(matchgate_views(n_max=6))
def test_idempotent(view):
    form = canonicalize(view)
    again = canonicalize(form.matching_view())
    assert (again.r, again.weights) == (form.r, form.weights)


def test_crossover():
    form = canonicalize(MatrixView(crossover(), 2))
    assert (form.r, form.weights) == (2, (ONE, ONE))
    assert reconstruct(form) == crossover()


def test_non_matchgate_rejected(rng):
    f = signature(rng, (2,) * 4)
    with pytest.raises(NotAMatchgateError) as info:
        canonicalize(MatrixView(f, 2))
    assert len(info.value.mismatch) == 4


def test_non_boolean_rejected():
    with pytest.raises(ValueError):
        canonicalize(MatrixView(Signature.zeros((3, 2)), 1))


@given(graphs(n_max=6))
def test_to_underlying_graph(g):
    f = signature_from_graph(g).scale(Scalar(2, 1))
    got, log = to_underlying_graph(f)
    assert got == g
    assert apply_log(log, MatrixView(f, g.n)).sig == signature_from_graph(g)


def test_to_underlying_graph_rejects_zero():
    with pytest.raises(ValueError):
        to_underlying_graph(Signature.zeros((2, 2)))
