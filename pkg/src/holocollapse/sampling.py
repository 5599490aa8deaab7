"""Seeded random scalars, signatures, matrices and graphs for experiments and tests."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import linalg
from .graph import UnderlyingGraph
from .scalar import Scalar
from .tensor import Signature, constant


def rng_of(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def scalar(rng, bound: int = 3, complex_: bool = False, denominators=(1, 1, 2, 3)) -> Scalar:
    """Small Gaussian rational; integers are the most common."""
    def part():
        num = int(rng.integers(-bound, bound + 1))
        return Fraction(num, int(rng.choice(denominators)))

    return Scalar(part(), part() if complex_ else 0)


def nonzero_scalar(rng, **kw) -> Scalar:
    while True:
        x = scalar(rng, **kw)
        if x:
            return x


def signature(rng, domains, density: float = 1.0, **kw) -> Signature:
    domains = tuple(domains)
    size = int(np.prod(domains)) if domains else 1
    flat = [scalar(rng, **kw) if rng.random() < density else Scalar(0) for _ in range(size)]
    if not domains:
        return constant(flat[0])
    return Signature.from_flat(domains, flat)


def matrix(rng, rows: int, cols: int, **kw) -> np.ndarray:
    return linalg.as_matrix([[scalar(rng, **kw) for _ in range(cols)] for _ in range(rows)])


def invertible_matrix(rng, n: int, **kw) -> np.ndarray:
    while True:
        m = matrix(rng, n, n, **kw)
        if linalg.rank(m) == n:
            return m


def graph(rng, n: int, density: float = 0.6, split: int | None = None, **kw) -> UnderlyingGraph:
    weights = {}
    for i in range(n):
        for j in range(i + 1, n):
            if split is not None and (i < split) == (j < split):
                continue
            if rng.random() < density:
                weights[(i, j)] = scalar(rng, **kw)
    return UnderlyingGraph(n, weights, split)


def weight_matrix_graph(rng, s: int, t: int, **kw) -> UnderlyingGraph:
    return UnderlyingGraph.from_weight_matrix(matrix(rng, s, t, **kw))


__all__ = [
    "rng_of",
    "scalar",
    "nonzero_scalar",
    "signature",
    "matrix",
    "invertible_matrix",
    "graph",
    "weight_matrix_graph",
]
