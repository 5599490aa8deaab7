"""Exact dense linear algebra over Gaussian rationals.

Matrices are 2-d numpy arrays of dtype ``object`` holding :class:`Scalar`
entries.  Nothing here ever touches floating point.
"""

from __future__ import annotations

import numpy as np

from .scalar import ONE, ZERO, Scalar, as_scalar


def as_matrix(rows) -> np.ndarray:
    """Build an object matrix from nested rows of anything :func:`as_scalar` takes."""
    if isinstance(rows, np.ndarray) and rows.dtype == object and rows.ndim == 2:
        if all(isinstance(x, Scalar) for x in rows.flat):
            return rows
    arr = np.asarray(rows, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = as_scalar(x)
    return out


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return a @ b


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def kron_power(a: np.ndarray, k: int) -> np.ndarray:
    out = identity(1)
    for _ in range(k):
        out = kron(out, a)
    return out


def is_zero(a: np.ndarray) -> bool:
    return not any(a.flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def _bareiss(a: np.ndarray):
    """Fraction-free elimination; returns (rank, sign-corrected last pivot, pivot rows)."""
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    prev = ONE
    sign = 1
    rank = 0
    perm = list(range(nrows))
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
            perm[rank], perm[piv] = perm[piv], perm[rank]
            sign = -sign
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            row_r, row_k = m[r], m[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - f * row_k[c]) / prev
            row_r[col] = ZERO
        prev = p
        rank += 1
    return rank, prev, sign, perm


def rank(a: np.ndarray) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    if a.size == 0:
        return 0
    return _bareiss(a)[0]


def det(a: np.ndarray) -> Scalar:
    n, m = a.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    r, last, sign, _ = _bareiss(a)
    if r < n:
        return ZERO
    return last if sign > 0 else -last


def rref(a: np.ndarray):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    out = np.empty((nrows, ncols), dtype=object)
    for i in range(nrows):
        for j in range(ncols):
            out[i, j] = m[i][j]
    return out, pivots


class _RowSpace:
    """Incrementally maintained echelon basis used for independence tests."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Scalar]] = []
        self.pivots: list[int] = []

    def reduce(self, row):
        v = list(row)
        for basis, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, basis)]
        return v

    def add(self, row) -> bool:
        v = self.reduce(row)
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = v[p].inverse()
        v = [x * inv for x in v]
        for k, (basis, q) in enumerate(zip(self.rows, self.pivots)):
            if basis[p]:
                f = basis[p]
                self.rows[k] = [x - f * y for x, y in zip(basis, v)]
        self.rows.append(v)
        self.pivots.append(p)
        return True


def independent_rows(a: np.ndarray) -> list[int]:
    """Indices of the first-found maximal independent set of rows, in order."""
    space = _RowSpace(a.shape[1])
    return [i for i, row in enumerate(a) if space.add(row)]


def complete_basis(base: np.ndarray, candidates: np.ndarray) -> list[int]:
    """Greedily pick candidate rows that extend the span of ``base``."""
    space = _RowSpace(candidates.shape[1])
    for row in base:
        space.add(row)
    return [i for i, row in enumerate(candidates) if space.add(row)]


def in_row_space(base: np.ndarray, row) -> bool:
    space = _RowSpace(len(row))
    for b in base:
        space.add(b)
    return not any(space.reduce(row))


def solve_left(b: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Return X with ``X @ b == m``; ``b`` must have independent rows.

    Raises ``ValueError`` if some row of ``m`` is outside the row space of ``b``.
    """
    k, n = b.shape
    if m.shape[1] != n:
        raise ValueError(f"dimension mismatch: {m.shape} vs {b.shape}")
    if rank(b) != k:
        raise ValueError("solve_left needs a matrix with independent rows")
    # Solve b^T x = m_row^T for each row through one augmented elimination.
    aug = np.concatenate([b.T, m.T], axis=1)
    red, pivots = rref(aug)
    if any(p >= k for p in pivots):
        raise ValueError("row of target lies outside the row space")
    out = zeros(m.shape[0], k)
    for r, p in enumerate(pivots):
        for i in range(m.shape[0]):
            out[i, p] = red[r, k + i]
    return out


def inverse(a: np.ndarray) -> np.ndarray:
    n, m = a.shape
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return zeros(0, 0)
    aug = np.concatenate([a, identity(n)], axis=1)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return red[:, n:].copy()
