"""Pfaffians, introduced matchgates and the matchgate membership test."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .graph import UnderlyingGraph
from .scalar import ONE, ZERO, Scalar
from .tensor import MatrixView, Signature
from .transforms import Flip, GlobalFactor, Side, apply_log

__all__ = [
    "UnderlyingGraph",
    "pfaffian",
    "pfaffian_of_matrix",
    "pfaffian_by_matchings",
    "pfaffian_by_permutations",
    "signature_from_graph",
    "Core",
    "extract_core",
    "anchor",
    "normalize",
    "MembershipResult",
    "is_matchgate",
    "NotAMatchgateError",
    "multiply_introduced",
]


class NotAMatchgateError(ValueError):
    def __init__(self, message: str, mismatch=None):
        super().__init__(message)
        self.mismatch = mismatch


class _SubPfaffians:
    """Memoized Pfaffians of principal submatrices, keyed by vertex bitmask.

    Expansion is along the lowest remaining vertex:
    ``Pf(S) = sum_j (-1)^k a[i, j] Pf(S - {i, j})`` with ``k`` the number of
    vertices of ``S`` strictly between ``i`` and ``j``.
    """

    def __init__(self, a: np.ndarray):
        self.n = a.shape[0]
        self.a = a
        self.memo = {0: ONE}

    def __call__(self, mask: int) -> Scalar:
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        if bin(mask).count("1") % 2:
            self.memo[mask] = ZERO
            return ZERO
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        total = ZERO
        between = 0
        for j in range(i + 1, self.n):
            if not rest >> j & 1:
                continue
            w = self.a[i, j]
            if w:
                term = w * self(rest & ~(1 << j))
                total = total - term if between % 2 else total + term
            between += 1
        self.memo[mask] = total
        return total


def pfaffian_of_matrix(a) -> Scalar:
    a = linalg.as_matrix(a)
    n = a.shape[0]
    return _SubPfaffians(a)((1 << n) - 1)


def pfaffian(g: UnderlyingGraph) -> Scalar:
    """Signed sum over perfect matchings; zero for an odd vertex count."""
    return pfaffian_of_matrix(g.skew_matrix())


def _matchings(vertices):
    if not vertices:
        yield []
        return
    first, rest = vertices[0], vertices[1:]
    for k, j in enumerate(rest):
        for m in _matchings(rest[:k] + rest[k + 1 :]):
            yield [(first, j)] + m


def _inversions(seq) -> int:
    return sum(1 for x, y in itertools.combinations(seq, 2) if x > y)


def _crossings(matching) -> int:
    return sum(
        1
        for (a, b), (c, d) in itertools.combinations(matching, 2)
        if a < c < b < d or c < a < d < b
    )


def pfaffian_by_matchings(a, sign: str = "permutation") -> Scalar:
    """Oracle: enumerate perfect matchings once each.

    ``sign="permutation"`` uses the parity of ``(i1, i2, ..., i2n)``;
    ``sign="crossing"`` uses the parity of chord crossings with the vertices
    placed on a circle.
    """
    if sign not in ("permutation", "crossing"):
        raise ValueError(f"unknown sign rule {sign!r}")
    a = linalg.as_matrix(a)
    n = a.shape[0]
    if n % 2:
        return ZERO
    total = ZERO
    for m in _matchings(list(range(n))):
        term = ONE
        for i, j in m:
            term = term * a[i, j]
        if not term:
            continue
        if sign == "permutation":
            odd = _inversions([v for pair in m for v in pair]) % 2
        else:
            odd = _crossings(m) % 2
        total = total - term if odd else total + term
    return total


def pfaffian_by_permutations(a) -> Scalar:
    """The literal sum over all orderings ``(i1, ..., i2n)`` of ``sgn * prod a[i_{2k-1}, i_{2k}]``.

    Every matching is counted ``2^n n!`` times here.
    """
    a = linalg.as_matrix(a)
    n = a.shape[0]
    if n % 2:
        return ZERO
    total = ZERO
    for perm in itertools.permutations(range(n)):
        term = ONE
        for k in range(0, n, 2):
            term = term * a[perm[k], perm[k + 1]]
            if not term:
                break
        if term:
            total = total - term if _inversions(perm) % 2 else total + term
    return total


def signature_from_graph(g: UnderlyingGraph) -> Signature:
    """Arity-n Boolean signature: value on X is the Pfaffian on the zeros of X."""
    sub = _SubPfaffians(g.skew_matrix())
    n = g.n
    out = np.empty((2,) * n, dtype=object)
    for x in itertools.product((0, 1), repeat=n):
        mask = 0
        for i, b in enumerate(x):
            if not b:
                mask |= 1 << i
        out[x] = sub(mask)
    return Signature._wrap(out)


def view_from_graph(g: UnderlyingGraph, s: int | None = None) -> MatrixView:
    s = g.split if s is None else s
    if s is None:
        raise ValueError("need a split")
    return MatrixView(signature_from_graph(g), s)


# -- core and membership -----------------------------------------------------


def _check_boolean(f: Signature) -> None:
    if any(d != 2 for d in f.domains):
        raise ValueError(f"matchgate signatures are Boolean, got domains {f.domains}")


def anchor(f: Signature) -> tuple[int, ...]:
    """Nonzero base point: all-ones if nonzero there, else the lexicographically first nonzero input."""
    _check_boolean(f)
    ones = (1,) * f.arity
    if f[ones]:
        return ones
    for x, v in f.items():
        if v:
            return tuple(int(b) for b in x)
    raise ValueError("zero signature has no nonzero anchor")


@dataclass(frozen=True)
class Core:
    anchor: tuple[int, ...]
    anchor_value: Scalar
    values: dict

    def __post_init__(self):
        if not self.anchor_value:
            raise ValueError("core anchor value must be nonzero")


def _ball2(x):
    n = len(x)
    yield tuple(x)
    for i in range(n):
        y = list(x)
        y[i] ^= 1
        yield tuple(y)
    for i, j in itertools.combinations(range(n), 2):
        y = list(x)
        y[i] ^= 1
        y[j] ^= 1
        yield tuple(y)


def extract_core(f: Signature, at=None) -> Core:
    """Values of ``f`` on ``U_2(X)`` for the anchor X (or the given one)."""
    _check_boolean(f)
    if f.is_zero():
        raise ValueError("zero signature has no core")
    x = anchor(f) if at is None else tuple(at)
    if not f[x]:
        raise ValueError(f"f vanishes at {x}")
    return Core(x, f[x], {y: f[y] for y in _ball2(x)})


def normalize(f: Signature, at=None):
    """Flips and a global factor taking ``f`` to a signature with value 1 at all-ones.

    Returns ``(log, graph)``: the log acts on ``f`` viewed with every variable
    on the input side, and ``graph`` carries the weights read off ``U_2(1)``.
    """
    core = extract_core(f, at)
    x = core.anchor
    log = tuple(Flip(Side.INPUT, i) for i, b in enumerate(x) if not b)
    c = core.anchor_value
    if c != ONE:
        log += (GlobalFactor(ONE / c),)
    n = f.arity
    weights = {}
    for i, j in itertools.combinations(range(n), 2):
        y = [1] * n
        y[i] = y[j] = 0
        # back to f's coordinates
        src = tuple(b ^ (1 - xb) for b, xb in zip(y, x))
        w = core.values[src] / c
        if w:
            weights[(i, j)] = w
    return log, UnderlyingGraph(n, weights)


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of the membership test.

    ``graph`` and ``log`` are the normalization the test used (also on
    failure); ``mismatch`` is the first input where the rebuilt value differs.
    """

    ok: bool
    graph: UnderlyingGraph | None = None
    log: tuple = ()
    mismatch: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok

    def __iter__(self):
        witness = (self.graph, self.log) if self.ok else self.mismatch
        return iter((self.ok, witness))


def is_matchgate(f: Signature) -> MembershipResult:
    """Rebuild ``f`` from its core through an introduced matchgate and compare."""
    _check_boolean(f)
    if f.is_zero():
        return MembershipResult(True)
    log, g = normalize(f)
    rebuilt = signature_from_graph(g)
    normed = apply_log(log, MatrixView(f, f.arity)).sig
    for x, v in normed.items():
        if v != rebuilt.values[x]:
            return MembershipResult(False, g, log, tuple(int(b) for b in x))
    return MembershipResult(True, g, log)


def multiply_introduced(g1: UnderlyingGraph, g2: UnderlyingGraph) -> UnderlyingGraph:
    """Bipartite graph with weight matrix ``W1 W2``."""
    if g1.split is None or g2.split is None:
        raise ValueError("both graphs need a bipartite split")
    if g1.t != g2.split:
        raise ValueError(f"inner dimensions differ: {g1.t} vs {g2.split}")
    return UnderlyingGraph.from_weight_matrix(linalg.matmul(g1.weight_matrix(), g2.weight_matrix()))
