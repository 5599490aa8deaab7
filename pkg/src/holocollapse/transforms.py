"""The five elementary matchgate transformations as logged matrix actions.

Positions are 0-based.  On the input side position ``p`` is row bit ``p``
(variable ``e_p``, most significant first).  On the output side position
``p`` is column bit ``p`` counted from the most significant end, which is
variable ``e_{s+t-1-p}`` because the column index reads the outputs in
reverse.  Exchange, bar and slash act on the adjacent pair ``(p, p+1)``.

Input-side steps left-multiply the matrix by the padded step matrix;
output-side steps right-multiply by its transpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from . import linalg
from .graph import UnderlyingGraph
from .scalar import ONE, Scalar, as_scalar
from .tensor import MatrixView


class Side(Enum):
    INPUT = "in"
    OUTPUT = "out"


def _side(x) -> Side:
    return x if isinstance(x, Side) else Side(x)


@dataclass(frozen=True)
class Flip:
    side: Side
    pos: int

    def __post_init__(self):
        object.__setattr__(self, "side", _side(self.side))


@dataclass(frozen=True)
class GlobalFactor:
    c: Scalar

    def __post_init__(self):
        c = as_scalar(self.c)
        if not c:
            raise ValueError("global factor must be nonzero")
        object.__setattr__(self, "c", c)


@dataclass(frozen=True)
class Exchange:
    side: Side
    pos: int

    def __post_init__(self):
        object.__setattr__(self, "side", _side(self.side))


@dataclass(frozen=True)
class Bar:
    """Row ``00`` of the pair picks up ``weight`` times row ``11``."""

    side: Side
    pos: int
    weight: Scalar

    def __post_init__(self):
        object.__setattr__(self, "side", _side(self.side))
        object.__setattr__(self, "weight", as_scalar(self.weight))


@dataclass(frozen=True)
class Slash:
    """Row ``10`` of the pair picks up ``weight`` times row ``01``."""

    side: Side
    pos: int
    weight: Scalar

    def __post_init__(self):
        object.__setattr__(self, "side", _side(self.side))
        object.__setattr__(self, "weight", as_scalar(self.weight))


Step = Union[Flip, GlobalFactor, Exchange, Bar, Slash]
TransformLog = tuple


def exchange_normalized(side, pos: int) -> tuple[Step, Step]:
    """Exchange followed by a global factor -1, which keeps ``F(1...1)`` fixed."""
    return Exchange(side, pos), GlobalFactor(-1)


def _local_matrix(step: Step) -> np.ndarray:
    if isinstance(step, GlobalFactor):
        return linalg.as_matrix([[step.c]])
    if isinstance(step, Flip):
        return linalg.as_matrix([[0, 1], [1, 0]])
    if isinstance(step, Exchange):
        return linalg.as_matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]])
    v = step.weight
    if isinstance(step, Bar):
        return linalg.as_matrix([[1, 0, 0, v], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    if isinstance(step, Slash):
        return linalg.as_matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, v, 1, 0], [0, 0, 0, 1]])
    raise TypeError(f"not a transformation step: {step!r}")


def step_matrix(step: Step) -> MatrixView:
    """The function of the attached gadget, as a 1x1, 2x2 or 4x4 matrix view."""
    mat = _local_matrix(step)
    k = mat.shape[0].bit_length() - 1
    return MatrixView.from_matrix(mat, (2,) * k, (2,) * k)


def width(step: Step) -> int:
    if isinstance(step, GlobalFactor):
        return 0
    return 1 if isinstance(step, Flip) else 2


def inverse(step: Step) -> Step:
    if isinstance(step, GlobalFactor):
        return GlobalFactor(ONE / step.c)
    if isinstance(step, (Bar, Slash)):
        return type(step)(step.side, step.pos, -step.weight)
    return step


def invert(log) -> TransformLog:
    return tuple(inverse(step) for step in reversed(tuple(log)))


def _bits(n: int) -> int:
    k = n.bit_length() - 1
    if n <= 0 or (1 << k) != n:
        raise ValueError(f"side of length {n} is not a Boolean bundle")
    return k


def apply_matrix(step: Step, mat: np.ndarray) -> np.ndarray:
    """Apply ``step`` to a plain matrix whose acted-on dimension is a power of two."""
    if isinstance(step, GlobalFactor):
        return mat * step.c
    local = _local_matrix(step)
    w = width(step)
    rows, cols = mat.shape
    k = _bits(rows if step.side is Side.INPUT else cols)
    if not 0 <= step.pos <= k - w:
        raise ValueError(f"position {step.pos} out of range for {k} {step.side.value} bits")
    hi, lo = 2**step.pos, 2 ** (k - step.pos - w)
    if step.side is Side.INPUT:
        arr = mat.reshape(hi, 2**w, lo, cols)
        axis = 1
    else:
        arr = mat.reshape(rows, hi, 2**w, lo)
        axis = 2
    # local matrices are sparse, so combine slices instead of a dense contraction
    out = np.empty_like(arr)
    for a in range(2**w):
        terms = [(local[a, b], np.take(arr, b, axis=axis)) for b in range(2**w) if local[a, b]]
        acc = terms[0][1] if terms[0][0] == ONE else terms[0][1] * terms[0][0]
        for coef, part in terms[1:]:
            acc = acc + (part if coef == ONE else part * coef)
        idx = [slice(None)] * 4
        idx[axis] = a
        out[tuple(idx)] = acc
    return out.reshape(rows, cols)


def apply(step: Step, m: MatrixView) -> MatrixView:
    """Apply one step to a Boolean matrix view."""
    if width(step) and any(d != 2 for d in (m.row_domains if step.side is Side.INPUT else m.col_domains)):
        raise ValueError("transformations act on Boolean variables only")
    return MatrixView.from_matrix(apply_matrix(step, m.matrix()), m.row_domains, m.col_domains)


def apply_log(log, m: MatrixView) -> MatrixView:
    mat = m.matrix()
    for step in log:
        mat = apply_matrix(step, mat)
    return MatrixView.from_matrix(mat, m.row_domains, m.col_domains)


def apply_log_matrix(log, mat: np.ndarray) -> np.ndarray:
    for step in log:
        mat = apply_matrix(step, mat)
    return mat


def padded_matrix(step: Step, k: int) -> np.ndarray:
    """The full ``2^k x 2^k`` matrix ``E^{(x)p} (x) X (x) E^{(x)rest}`` of an input-side step."""
    local = _local_matrix(step)
    if isinstance(step, GlobalFactor):
        return linalg.identity(2**k) * step.c
    w = width(step)
    return linalg.kron(linalg.kron(linalg.identity(2**step.pos), local), linalg.identity(2 ** (k - step.pos - w)))


def log_matrix(log, k: int, side: Side) -> np.ndarray:
    """The matrix a log multiplies by: ``B`` with ``B F`` (input) or ``C`` with ``F C`` (output)."""
    side = _side(side)
    return apply_log_matrix([s for s in log if _acts_on(s, side)], linalg.identity(2**k))


def _acts_on(step: Step, side: Side) -> bool:
    return isinstance(step, GlobalFactor) or step.side is side


# -- effect on underlying graphs ---------------------------------------------


def _vertex(side: Side, pos: int, s: int, t: int) -> int:
    return pos if side is Side.INPUT else s + t - 1 - pos


def predict_graph(step: Step, g: UnderlyingGraph, s: int) -> UnderlyingGraph:
    """Underlying graph after ``step`` for an introduced matchgate normalized at all-ones.

    Supported: GlobalFactor(-1) pairs are not modelled separately; an
    ``Exchange`` is predicted together with its following global factor -1
    (rename i <-> i+1, then negate every weight with exactly one end in the
    pair; the edge joining the pair only changes sign through the renaming).
    ``Bar(-W(i, i+1))`` zeroes that one weight.  ``Slash`` on a bipartite graph
    adds ``weight`` times one row (column) of the weight matrix to the next.
    """
    t = g.n - s
    if isinstance(step, Exchange):
        a = _vertex(step.side, step.pos, s, t)
        b = _vertex(step.side, step.pos + 1, s, t)
        lo = min(a, b)
        swapped = g.relabel_swap(lo)
        pair = {lo, lo + 1}
        return UnderlyingGraph(
            g.n,
            {e: (-w if len(set(e) & pair) == 1 else w) for e, w in swapped.weights.items()},
            g.split,
        )
    if isinstance(step, Bar):
        a = _vertex(step.side, step.pos, s, t)
        b = _vertex(step.side, step.pos + 1, s, t)
        i, j = min(a, b), max(a, b)
        weights = dict(g.weights)
        weights[(i, j)] = g.weight(i, j) + step.weight
        return UnderlyingGraph(g.n, weights, g.split)
    if isinstance(step, Slash):
        wm = g.weight_matrix()
        p = step.pos
        if step.side is Side.INPUT:
            wm[p + 1, :] = wm[p + 1, :] + step.weight * wm[p, :]
        else:
            wm[:, p + 1] = wm[:, p + 1] + step.weight * wm[:, p]
        return UnderlyingGraph.from_weight_matrix(wm)
    raise ValueError(f"no graph prediction for {type(step).__name__}")


__all__ = [
    "Side",
    "Flip",
    "GlobalFactor",
    "Exchange",
    "Bar",
    "Slash",
    "Step",
    "TransformLog",
    "exchange_normalized",
    "step_matrix",
    "inverse",
    "invert",
    "apply",
    "apply_log",
    "apply_matrix",
    "apply_log_matrix",
    "padded_matrix",
    "log_matrix",
    "predict_graph",
]
