"""Bipartite Holant (#BCSP) instances and their exact evaluation.

An instance is a bipartite multigraph.  Every vertex carries a signature and
an ordered tuple of edge labels (the rotation order that feeds its edges to
the signature).  A label occurring twice is an internal edge and must join
a left vertex to a right vertex.  A label occurring once is dangling and
must be listed in ``dangling``, whose order is the boundary order of the
resulting gadget.

Planarity is not checked: enumeration does not depend on the embedding.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .scalar import ONE, ZERO, Scalar
from .tensor import MatrixView, Signature

MAX_BITS = 24


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    name: str
    signature: str
    edges: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))


@dataclass
class Instance:
    domain_size: int
    signatures: dict[str, Signature]
    left: list[Vertex]
    right: list[Vertex]
    dangling: tuple[str, ...] = ()

    def __post_init__(self):
        self.left = list(self.left)
        self.right = list(self.right)
        self.dangling = tuple(self.dangling)
        self.check()

    @property
    def vertices(self) -> list[Vertex]:
        return self.left + self.right

    @property
    def edges(self) -> list[str]:
        """Internal edge labels in order of first appearance."""
        seen, out = set(self.dangling), []
        for v in self.vertices:
            for e in v.edges:
                if e not in seen:
                    seen.add(e)
                    out.append(e)
        return out

    def edge_bits(self) -> float:
        n_vars = len(self.edges) + len(self.dangling)
        return n_vars * math.log2(self.domain_size)

    def check(self) -> None:
        names = [v.name for v in self.vertices]
        dup = [k for k, c in Counter(names).items() if c > 1]
        if dup:
            raise InstanceError(f"duplicate vertex names {dup}")
        for v in self.vertices:
            if v.signature not in self.signatures:
                raise InstanceError(f"vertex {v.name}: unknown signature {v.signature!r}")
            sig = self.signatures[v.signature]
            if sig.arity != len(v.edges):
                raise InstanceError(
                    f"vertex {v.name}: signature arity {sig.arity} != degree {len(v.edges)}"
                )
            if any(d != self.domain_size for d in sig.domains):
                raise InstanceError(
                    f"vertex {v.name}: signature domains {sig.domains} != {self.domain_size}"
                )
        left_count = Counter(e for v in self.left for e in v.edges)
        right_count = Counter(e for v in self.right for e in v.edges)
        total = left_count + right_count
        dangling = Counter(self.dangling)
        for e, c in dangling.items():
            if c > 1:
                raise InstanceError(f"dangling edge {e!r} listed twice")
            if total[e] != 1:
                raise InstanceError(f"dangling edge {e!r} must touch exactly one slot")
        for e, c in total.items():
            if e in dangling:
                continue
            if c != 2 or left_count[e] != 1 or right_count[e] != 1:
                raise InstanceError(f"edge {e!r} must join one left slot to one right slot")


def _plan(inst: Instance, fixed: dict[str, int]):
    order = [e for e in inst.edges if e not in fixed]
    pos = {e: i for i, e in enumerate(order)}
    completes: list[list] = [[] for _ in order]
    start = ONE
    for v in inst.vertices:
        sig = inst.signatures[v.signature]
        slots = tuple((True, pos[e]) if e in pos else (False, fixed[e]) for e in v.edges)
        last = max((p for is_var, p in slots if is_var), default=-1)
        if last < 0:
            start = start * sig.values[tuple(p for _, p in slots)]
        else:
            completes[last].append((sig.values, slots))
    return order, completes, start


def _sum_assignments(inst: Instance, fixed: dict[str, int]) -> Scalar:
    order, completes, start = _plan(inst, fixed)
    if not start:
        return ZERO
    n = inst.domain_size
    k_max = len(order)
    assign = [0] * k_max

    def dfs(k: int, acc: Scalar) -> Scalar:
        if k == k_max:
            return acc
        total = ZERO
        done = completes[k]
        for val in range(n):
            assign[k] = val
            a = acc
            for values, slots in done:
                a = a * values[tuple(assign[p] if is_var else p for is_var, p in slots)]
                if not a:
                    break
            if a:
                total = total + dfs(k + 1, a)
        return total

    return dfs(0, start)


def _check_size(inst: Instance, max_bits: float) -> None:
    if inst.edge_bits() > max_bits:
        raise InstanceError(
            f"instance has {inst.edge_bits():.1f} binary-equivalent edge variables (cap {max_bits})"
        )


def evaluate(inst: Instance, max_bits: float = MAX_BITS) -> Scalar:
    """Sum over all edge assignments of the product of vertex values.

    Depth-first over edges; a partial product is multiplied in as soon as a
    vertex has all its edges assigned, and zero branches are cut.
    """
    if inst.dangling:
        raise InstanceError("evaluate needs a closed instance; use gadget_signature")
    _check_size(inst, max_bits)
    return _sum_assignments(inst, {})


def evaluate_naive(inst: Instance, max_bits: float = 16) -> Scalar:
    """Independent enumerator: every assignment, edges in reverse order, all vertices."""
    if inst.dangling:
        raise InstanceError("evaluate_naive needs a closed instance")
    _check_size(inst, max_bits)
    edges = inst.edges[::-1]
    total = ZERO
    for sigma in itertools.product(range(inst.domain_size), repeat=len(edges)):
        value = dict(zip(edges, sigma))
        term = ONE
        for v in inst.vertices:
            term = term * inst.signatures[v.signature].values[tuple(value[e] for e in v.edges)]
        total = total + term
    return total


def gadget_signature(inst: Instance, max_bits: float = MAX_BITS) -> Signature:
    """Function of the gadget on its dangling edges, in boundary order."""
    _check_size(inst, max_bits)
    d = len(inst.dangling)
    n = inst.domain_size
    out = np.empty((n,) * d, dtype=object)
    for tau in itertools.product(range(n), repeat=d):
        out[tau] = _sum_assignments(inst, dict(zip(inst.dangling, tau)))
    return Signature._wrap(out)


def disjoint_union(a: Instance, b: Instance) -> Instance:
    if a.domain_size != b.domain_size:
        raise InstanceError("domain sizes differ")

    def rename(inst: Instance, tag: str):
        sigs = {f"{tag}{k}": s for k, s in inst.signatures.items()}
        side = lambda vs: [
            Vertex(f"{tag}{v.name}", f"{tag}{v.signature}", tuple(f"{tag}{e}" for e in v.edges))
            for v in vs
        ]
        return sigs, side(inst.left), side(inst.right), tuple(f"{tag}{e}" for e in inst.dangling)

    sa, la, ra, da = rename(a, "a.")
    sb, lb, rb, db = rename(b, "b.")
    return Instance(a.domain_size, {**sa, **sb}, la + lb, ra + rb, da + db)


def _matrix(m) -> np.ndarray:
    return m.matrix() if isinstance(m, MatrixView) else linalg.as_matrix(m)


def transform_left(f: Signature, m) -> Signature:
    """``F M^{(x) R_F}``: ``(FM)(y) = sum_x F(x) prod_i M[x_i, y_i]``."""
    mat = _matrix(m)
    if any(d != mat.shape[0] for d in f.domains):
        raise ValueError(f"F has domains {f.domains}, M has {mat.shape[0]} rows")
    vals = f.values
    for i in range(f.arity):
        vals = np.moveaxis(np.tensordot(vals, mat, axes=([i], [0])), -1, i)
    return Signature._wrap(vals)


def transform_right(m, h: Signature) -> Signature:
    """``M^{(x) R_H} H``: ``(MH)(x) = sum_y prod_i M[x_i, y_i] H(y)``."""
    mat = _matrix(m)
    if any(d != mat.shape[1] for d in h.domains):
        raise ValueError(f"H has domains {h.domains}, M has {mat.shape[1]} columns")
    vals = h.values
    for i in range(h.arity):
        vals = np.moveaxis(np.tensordot(mat, vals, axes=([1], [i])), 0, i)
    return Signature._wrap(vals)


# -- randomized equivalence checks ------------------------------------------


@dataclass(frozen=True)
class Problem:
    """Signature families of a #F|H problem, matched to another problem by index."""

    left: tuple[Signature, ...]
    right: tuple[Signature, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        doms = {d for s in self.left + self.right for d in s.domains}
        if len(doms) > 1:
            raise ValueError(f"mixed domain sizes {sorted(doms)}")

    @property
    def domain_size(self) -> int:
        for s in self.left + self.right:
            if s.arity:
                return s.domains[0]
        return 2


@dataclass(frozen=True)
class Skeleton:
    """Instance structure without signatures: (function index, edge ids) per vertex."""

    left: tuple[tuple[int, tuple[int, ...]], ...]
    right: tuple[tuple[int, tuple[int, ...]], ...]
    n_edges: int

    def instantiate(self, problem: Problem) -> Instance:
        sigs = {f"F{i}": s for i, s in enumerate(problem.left)}
        sigs.update({f"H{i}": s for i, s in enumerate(problem.right)})
        left = [Vertex(f"u{k}", f"F{i}", tuple(f"e{e}" for e in es)) for k, (i, es) in enumerate(self.left)]
        right = [Vertex(f"v{k}", f"H{i}", tuple(f"e{e}" for e in es)) for k, (i, es) in enumerate(self.right)]
        return Instance(problem.domain_size, sigs, left, right)


def _reachable(arities: list[int], limit: int) -> list[bool]:
    ok = [False] * (limit + 1)
    ok[0] = True
    for total in range(1, limit + 1):
        ok[total] = any(a <= total and ok[total - a] for a in arities)
    return ok


def _random_fill(arities: list[int], total: int, ok: list[bool], rng) -> list[int]:
    picks = []
    while total:
        choices = [i for i, a in enumerate(arities) if 0 < a <= total and ok[total - a]]
        i = int(rng.choice(choices))
        picks.append(i)
        total -= arities[i]
    return picks


def random_skeleton(left_arities, right_arities, rng, max_edges: int = 6) -> Skeleton:
    """Random bipartite structure using functions with the given arities."""
    la = [a if a > 0 else 0 for a in left_arities]
    ra = [a if a > 0 else 0 for a in right_arities]
    ok_l = _reachable([a for a in la if a], max_edges)
    ok_r = _reachable([a for a in ra if a], max_edges)
    totals = [e for e in range(1, max_edges + 1) if ok_l[e] and ok_r[e]]
    if not totals:
        raise ValueError("no instance with at least one edge fits the arity and size bounds")
    n_edges = int(rng.choice(totals))
    left_funcs = _random_fill(la, n_edges, ok_l, rng)
    right_funcs = _random_fill(ra, n_edges, ok_r, rng)
    edge_ids = [int(e) for e in rng.permutation(n_edges)]
    left, k = [], 0
    for i in left_funcs:
        left.append((i, tuple(range(k, k + la[i]))))
        k += la[i]
    right, k = [], 0
    for i in right_funcs:
        right.append((i, tuple(edge_ids[k : k + ra[i]])))
        k += ra[i]
    return Skeleton(tuple(left), tuple(right), n_edges)


@dataclass(frozen=True)
class Counterexample:
    skeleton: Skeleton
    value_a: Scalar
    value_b: Scalar


@dataclass(frozen=True)
class Report:
    ok: bool
    trials: int
    counterexample: Counterexample | None = None
    values: tuple[Scalar, ...] = field(default=(), repr=False)

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return f"ok: {self.trials} random instances agree exactly"
        c = self.counterexample
        return (
            f"counterexample after {self.trials} trials: "
            f"{c.value_a} != {c.value_b} on {c.skeleton}"
        )


def verify_equivalent(a: Problem, b: Problem, trials: int = 20, seed=0, max_edges: int = 6,
                      max_bits: float = MAX_BITS) -> Report:
    """Evaluate both problems on the same random instances and compare exactly."""
    la = [s.arity for s in a.left]
    ra = [s.arity for s in a.right]
    if la != [s.arity for s in b.left] or ra != [s.arity for s in b.right]:
        raise ValueError("problems must pair up functions of equal arity")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    values = []
    for k in range(trials):
        skel = random_skeleton(la, ra, rng, max_edges)
        va = evaluate(skel.instantiate(a), max_bits)
        vb = evaluate(skel.instantiate(b), max_bits)
        values.append(va)
        if va != vb:
            return Report(False, k + 1, Counterexample(skel, va, vb), tuple(values))
    return Report(True, trials, None, tuple(values))


def verify_holant(fs, m, hs, trials: int = 20, seed=0, max_edges: int = 6) -> Report:
    """Check ``#F | M H`` against ``#F M | H`` on random instances."""
    lhs = Problem(tuple(fs), tuple(transform_right(m, h) for h in hs))
    rhs = Problem(tuple(transform_left(f, m) for f in fs), tuple(hs))
    return verify_equivalent(lhs, rhs, trials, seed, max_edges)
