"""Reduction of a matchgate function to a weighted matching by elementary transformations.

Every step acts on the matrix of the view and the underlying graph is read
back off the current values after each step (the value at all-ones stays 1
after normalization, so ``W(i, j)`` is just the value at ``Z_ij``).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .graph import UnderlyingGraph
from .matchgate import NotAMatchgateError, anchor, is_matchgate, signature_from_graph
from .scalar import ONE, Scalar
from .tensor import MatrixView, Signature
from .transforms import (
    Bar,
    Exchange,
    Flip,
    GlobalFactor,
    Side,
    Slash,
    apply_log,
    apply_matrix,
    invert,
)


@dataclass(frozen=True)
class CanonicalForm:
    """Matching ``{(0, s+t-1), ..., (r-1, s+t-r)}`` with ``weights``, and the logs that reach it.

    ``zero`` marks the identically zero function, which also has ``r = 0``
    but is not the (rank 1) signature of the empty matching.
    """

    s: int
    t: int
    r: int
    weights: tuple[Scalar, ...] = ()
    row_log: tuple = ()
    col_log: tuple = ()
    zero: bool = False

    def __post_init__(self):
        if not 0 <= self.r <= min(self.s, self.t):
            raise ValueError(f"matching size {self.r} exceeds min({self.s}, {self.t})")
        if len(self.weights) != self.r or not all(self.weights):
            raise ValueError("need r nonzero weights")
        if self.zero and (self.r or self.row_log or self.col_log):
            raise ValueError("the zero form has no matching and no logs")

    def graph(self) -> UnderlyingGraph:
        wm = linalg.zeros(self.s, self.t)
        for i, w in enumerate(self.weights):
            wm[i, i] = w
        return UnderlyingGraph.from_weight_matrix(wm)

    def matching_view(self) -> MatrixView:
        if self.zero:
            return MatrixView(Signature.zeros((2,) * (self.s + self.t)), self.s)
        return MatrixView(signature_from_graph(self.graph()), self.s)


def to_underlying_graph(f: Signature):
    """Flips and a global factor ``log`` and a graph ``g`` with ``apply_log(log, f) = signature_from_graph(g)``.

    The log acts on ``f`` with every variable on the input side.
    """
    if f.is_zero():
        raise ValueError("zero signature has no underlying graph")
    res = is_matchgate(f)
    if not res:
        raise NotAMatchgateError(f"not a matchgate signature, mismatch at {res.mismatch}", res.mismatch)
    return res.graph, res.log


class _Reducer:
    def __init__(self, m: MatrixView, observer=None):
        self.s, self.t = m.s, m.t
        self.mat = m.matrix()
        self.row_log: list = []
        self.col_log: list = []
        self.observer = observer
        self.full_row = 2**self.s - 1
        self.full_col = 2**self.t - 1

    def view(self) -> MatrixView:
        return MatrixView.from_matrix(self.mat, (2,) * self.s, (2,) * self.t)

    def do(self, *steps):
        for step in steps:
            side = Side.INPUT if isinstance(step, GlobalFactor) else step.side
            self.mat = apply_matrix(step, self.mat)
            (self.row_log if side is Side.INPUT else self.col_log).append(step)
        if self.observer is not None:
            self.observer(self.view(), steps)

    def exchange(self, side: Side, pos: int):
        # the trailing factor keeps the graph form, and lands in the same side's log
        self.mat = apply_matrix(Exchange(side, pos), self.mat)
        self.mat = apply_matrix(GlobalFactor(-1), self.mat)
        log = self.row_log if side is Side.INPUT else self.col_log
        log += [Exchange(side, pos), GlobalFactor(-1)]
        if self.observer is not None:
            self.observer(self.view(), tuple(log[-2:]))

    # values at Z_ij --------------------------------------------------------

    def same_side(self, side: Side, a: int, b: int) -> Scalar:
        """Weight between positions a < b of one side."""
        if side is Side.INPUT:
            bits = (1 << (self.s - 1 - a)) | (1 << (self.s - 1 - b))
            return self.mat[self.full_row ^ bits, self.full_col]
        bits = (1 << (self.t - 1 - a)) | (1 << (self.t - 1 - b))
        return self.mat[self.full_row, self.full_col ^ bits]

    def wm(self, i: int, p: int) -> Scalar:
        """Entry of the weight matrix: input position i, output position p."""
        return self.mat[self.full_row ^ (1 << (self.s - 1 - i)), self.full_col ^ (1 << (self.t - 1 - p))]

    # steps ---------------------------------------------------------------

    def normalize(self):
        sig = self.view().sig
        x = anchor(sig)
        for v, bit in enumerate(x):
            if bit:
                continue
            if v < self.s:
                self.do(Flip(Side.INPUT, v))
            else:
                self.do(Flip(Side.OUTPUT, self.s + self.t - 1 - v))
        c = self.mat[self.full_row, self.full_col]
        if c != ONE:
            self.do(GlobalFactor(ONE / c))

    def clear_same_side(self, side: Side):
        k = self.s if side is Side.INPUT else self.t
        while True:
            pair = next(
                ((a, b) for a in range(k) for b in range(a + 1, k) if self.same_side(side, a, b)),
                None,
            )
            if pair is None:
                return
            a, b = pair
            for q in range(b - 1, a, -1):
                self.exchange(side, q)
            self.do(Bar(side, a, -self.same_side(side, a, a + 1)))

    def bubble_column(self, p: int, top: int):
        """Row steps leaving column p with no nonzero below row ``top``."""
        for j in range(self.s - 1, top, -1):
            if not self.wm(j, p):
                continue
            above = self.wm(j - 1, p)
            if above:
                self.do(Slash(Side.INPUT, j - 1, -self.wm(j, p) / above))
            else:
                self.exchange(Side.INPUT, j - 1)

    def bubble_row(self, i: int, left: int):
        """Column steps leaving row i with no nonzero right of column ``left``."""
        for q in range(self.t - 1, left, -1):
            if not self.wm(i, q):
                continue
            before = self.wm(i, q - 1)
            if before:
                self.do(Slash(Side.OUTPUT, q - 1, -self.wm(i, q) / before))
            else:
                self.exchange(Side.OUTPUT, q - 1)

    def diagonalize(self) -> int:
        for k in range(min(self.s, self.t)):
            col = next(
                (p for p in range(k, self.t) if any(self.wm(i, p) for i in range(k, self.s))),
                None,
            )
            if col is None:
                return k
            self.bubble_column(col, k)
            for q in range(col - 1, k - 1, -1):
                self.exchange(Side.OUTPUT, q)
            self.bubble_row(k, k)
        return min(self.s, self.t)


def canonicalize(m: MatrixView, observer=None) -> CanonicalForm:
    """Reduce a Boolean matchgate view to its matching form.

    ``observer(view, steps)`` is called after every step (or exchange with
    its factor) with the current view.
    """
    if any(d != 2 for d in m.sig.domains):
        raise ValueError("canonical form needs Boolean variables")
    s, t = m.s, m.t
    if m.sig.is_zero():
        return CanonicalForm(s, t, 0, zero=True)
    res = is_matchgate(m.sig)
    if not res:
        raise NotAMatchgateError(f"not a matchgate signature, mismatch at {res.mismatch}", res.mismatch)
    red = _Reducer(m, observer)
    red.normalize()
    red.clear_same_side(Side.INPUT)
    red.clear_same_side(Side.OUTPUT)
    r = red.diagonalize()
    form = CanonicalForm(s, t, r, tuple(red.wm(i, i) for i in range(r)),
                         tuple(red.row_log), tuple(red.col_log))
    if not linalg.equal(red.mat, form.matching_view().matrix()):
        raise AssertionError("reduction did not reach a matching; input was not a matchgate")
    return form


def reconstruct(c: CanonicalForm) -> Signature:
    """Undo both logs on the matching signature."""
    view = c.matching_view()
    return apply_log(invert(c.row_log) + invert(c.col_log), view).sig


__all__ = ["CanonicalForm", "to_underlying_graph", "canonicalize", "reconstruct"]
