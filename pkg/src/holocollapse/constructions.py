"""Worked collapse examples built so that each precondition holds by construction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, sampling
from .collapse import (
    CollapsedProblem,
    HoloProblem,
    collapse_symmetric,
    collapse_via_cover,
    collapse_via_realizer,
    strip_columns,
)
from .graph import UnderlyingGraph
from .matchgate import signature_from_graph
from .scalar import ONE, ZERO
from .tensor import MatrixView, Signature


@dataclass(frozen=True)
class Example:
    name: str
    original: HoloProblem
    collapsed: CollapsedProblem


def _random_sides(rng, n: int, t: int, left_arities=(1, 2, 3), right_arities=(1, 2)):
    left = tuple(sampling.signature(rng, (n,) * a) for a in left_arities)
    right = tuple(sampling.signature(rng, (2**t,) * a) for a in right_arities)
    return left, right


def _supported_base(rng, n: int, t: int, r: int, constants) -> np.ndarray:
    m = linalg.zeros(n, 2**t)
    low = 0
    for c in constants:
        low = (low << 1) | c
    for high in range(2**r):
        for x in range(n):
            m[x, (high << (t - r)) | low] = sampling.scalar(rng)
    return m


def strip_example(seed=0) -> Example:
    """n = 2, t = 4, nonzero columns only where the last two bits are 1."""
    rng = sampling.rng_of(seed)
    m = _supported_base(rng, 2, 4, 2, (1, 1))
    left, right = _random_sides(rng, 2, 4)
    original = HoloProblem(left, m, right)
    return Example("strip", original, strip_columns(m, right, (1, 1), left=left))


def strip_constants_example(seed=0) -> Example:
    """n = 2, t = 3, nonzero columns only where the last bit is 0."""
    rng = sampling.rng_of(seed)
    m = _supported_base(rng, 2, 3, 2, (0,))
    left, right = _random_sides(rng, 2, 3)
    original = HoloProblem(left, m, right)
    return Example("strip-constants", original, strip_columns(m, right, (0,), left=left))


def _rank2_matchgate(rng) -> np.ndarray:
    """2 x 4 matrix of a (1, 2) introduced matchgate on a triangle with nonzero weights."""
    g = UnderlyingGraph(3, {(i, j): sampling.nonzero_scalar(rng) for i in range(3) for j in range(i + 1, 3)})
    return MatrixView(signature_from_graph(g), 1).matrix()


def realizer_example(seed=0) -> Example:
    """``M = A^{-1} P`` with ``P`` a rank-2 matchgate, so ``A`` is a full-rank realizer."""
    rng = sampling.rng_of(seed)
    p = _rank2_matchgate(rng)
    a = sampling.invertible_matrix(rng, 2)
    m = linalg.matmul(linalg.inverse(a), p)
    left, right = _random_sides(rng, 2, 2)
    original = HoloProblem(left, m, right)
    return Example("realizer", original, collapse_via_realizer(m, a, left, right))


def cover_example(seed=0) -> Example:
    """n = 3: ``M = Q P`` with ``P`` a rank-2 matchgate and ``Q`` a random 3 x 2 matrix."""
    rng = sampling.rng_of(seed)
    p = _rank2_matchgate(rng)
    q = sampling.matrix(rng, 3, 2)
    m = linalg.matmul(q, p)
    left, right = _random_sides(rng, 3, 2, left_arities=(1, 2))
    original = HoloProblem(left, m, right)
    return Example("cover", original, collapse_via_cover(m, p, q, left, right))


def symmetric_example(t: int = 2, seed=0) -> Example:
    """n = 3, binary symmetric F whose generator ``M^T F M`` is a rank-2 matchgate.

    The generator is the introduced matchgate of a complete bipartite graph
    with symmetric rank-1 weight matrix ``u u^T``, i.e. ``v1^T a v1 + v2^T c v2``
    with ``v1`` the all-ones column indicator and ``v2`` carrying ``u``.  The
    basis is mixed by a random invertible ``G``, and a third random row is
    added to M that F ignores.
    """
    rng = sampling.rng_of(seed)
    full = 2**t - 1
    u = [sampling.nonzero_scalar(rng) for _ in range(t)]
    v = linalg.zeros(2, 2**t)
    v[0, full] = ONE
    for p in range(t):
        v[1, full ^ (1 << (t - 1 - p))] = u[p]
    a, c = ONE, sampling.nonzero_scalar(rng)
    k = linalg.as_matrix([[a, ZERO], [ZERO, c]])
    g = sampling.invertible_matrix(rng, 2)
    g_inv = linalg.inverse(g)
    k_mixed = linalg.matmul(linalg.matmul(g_inv.T, k), g_inv)
    rows = linalg.matmul(g, v)
    m = np.concatenate([rows, sampling.matrix(rng, 1, 2**t)], axis=0)
    f_mat = linalg.zeros(3, 3)
    f_mat[:2, :2] = k_mixed
    f = Signature(f_mat)
    right = tuple(sampling.signature(rng, (2**t,) * ar) for ar in (1, 2))
    original = HoloProblem((f,), m, right)
    return Example(f"symmetric-t{t}", original, collapse_symmetric(f, m, right))


def all_examples(seed=0) -> list[Example]:
    return [
        strip_example(seed),
        strip_constants_example(seed),
        realizer_example(seed),
        cover_example(seed),
        symmetric_example(2, seed),
        symmetric_example(3, seed),
    ]


__all__ = [
    "Example",
    "strip_example",
    "strip_constants_example",
    "realizer_example",
    "cover_example",
    "symmetric_example",
    "all_examples",
]
