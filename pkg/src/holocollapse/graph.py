"""Weighted underlying graphs of introduced matchgates.

Vertices are numbered ``0..n-1`` in the cyclic order of the matchgate's
external edges.  Only pairs ``i < j`` are stored; the graph is read as the
skew-symmetric matrix with ``A[i, j] = W(i, j)`` and ``A[j, i] = -W(i, j)``.

For a bipartite graph with ``split = s`` the first ``s`` vertices are the
inputs and the rest the outputs.  The *weight matrix* is indexed by input
vertex and output **position**: position ``p`` is vertex ``n - 1 - p``, the
same reversed order the column index of a matrix view uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .scalar import ZERO, Scalar, as_scalar


@dataclass(frozen=True)
class UnderlyingGraph:
    n: int
    weights: dict = field(default_factory=dict)
    split: int | None = None

    def __post_init__(self):
        clean = {}
        for (i, j), w in dict(self.weights).items():
            w = as_scalar(w)
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"bad vertex pair ({i}, {j}) for n={self.n}")
            if i > j:
                i, j, w = j, i, -w
            if (i, j) in clean:
                raise ValueError(f"pair ({i}, {j}) given twice")
            if w:
                clean[(i, j)] = w
        object.__setattr__(self, "weights", clean)
        if self.split is not None:
            if not 0 <= self.split <= self.n:
                raise ValueError(f"bad split {self.split}")
            for i, j in clean:
                if (i < self.split) == (j < self.split):
                    raise ValueError(f"edge ({i}, {j}) does not cross the bipartite split")

    def weight(self, i: int, j: int) -> Scalar:
        if i < j:
            return self.weights.get((i, j), ZERO)
        if i > j:
            return -self.weights.get((j, i), ZERO)
        return ZERO

    def skew_matrix(self) -> np.ndarray:
        a = linalg.zeros(self.n, self.n)
        for (i, j), w in self.weights.items():
            a[i, j] = w
            a[j, i] = -w
        return a

    @classmethod
    def from_skew(cls, a) -> "UnderlyingGraph":
        a = linalg.as_matrix(a)
        n = a.shape[0]
        for i in range(n):
            for j in range(n):
                if a[i, j] != -a[j, i]:
                    raise ValueError("matrix is not skew-symmetric")
        return cls(n, {(i, j): a[i, j] for i in range(n) for j in range(i + 1, n) if a[i, j]})

    # bipartite helpers ---------------------------------------------------

    @property
    def t(self) -> int:
        if self.split is None:
            raise ValueError("graph has no bipartite split")
        return self.n - self.split

    @classmethod
    def from_weight_matrix(cls, wm) -> "UnderlyingGraph":
        wm = linalg.as_matrix(wm)
        s, t = wm.shape
        n = s + t
        return cls(n, {(i, n - 1 - p): wm[i, p] for i in range(s) for p in range(t) if wm[i, p]}, split=s)

    def weight_matrix(self) -> np.ndarray:
        s, t = self.split, self.t
        wm = linalg.zeros(s, t)
        for i in range(s):
            for p in range(t):
                wm[i, p] = self.weight(i, self.n - 1 - p)
        return wm

    def relabel_swap(self, k: int) -> "UnderlyingGraph":
        """Swap vertices k and k+1 (no sign changes)."""
        perm = list(range(self.n))
        perm[k], perm[k + 1] = k + 1, k
        return UnderlyingGraph(
            self.n, {(perm[i], perm[j]): w for (i, j), w in self.weights.items()}, self.split
        )
