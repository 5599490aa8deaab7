"""Concrete gadgets: Exactly-One vertices, weighted edges and the crossover.

Perfect-matching instances are written as Holant instances with every
matching edge on the left as the binary function ``[1, 0, w]`` and every
graph vertex on the right as Exactly-One.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import UnderlyingGraph
from .holant import Instance, Vertex
from .scalar import ONE, as_scalar
from .tensor import Signature
from .transforms import Exchange, Side, step_matrix


def exact_one(d: int) -> Signature:
    """``[0, 1, 0, ..., 0]`` on ``d`` bits."""
    return Signature.symmetric([0, 1] + [0] * (d - 1))


def edge_weight(w) -> Signature:
    """A matching edge of weight ``w`` as the binary function ``[1, 0, w]``."""
    return Signature.symmetric([1, 0, as_scalar(w)])


def crossover() -> Signature:
    """The sign crossover function C on ``x1 x2 x3 x4``; its (2, 2) view is the exchange matrix."""
    return step_matrix(Exchange(Side.INPUT, 0)).sig


# The 6-vertex crossover: a1..a4 (0..3) carry the dangling edges in boundary
# order, b = 4 and c = 5 sit inside the square a1 a2 a3 a4.
CROSSOVER_EDGES = ((0, 1, 1), (0, 4, 1), (1, 5, 1), (2, 3, 1), (2, 5, 1), (3, 4, 1), (4, 5, -1))


def matching_gadget(n: int, edges, dangling_at=(), names=None) -> Instance:
    """Holant instance for perfect matchings of a weighted graph.

    ``edges`` is a list of ``(i, j, w)``; ``dangling_at`` lists vertices that
    get one extra dangling edge each, in boundary order.
    """
    names = names or [f"v{k}" for k in range(n)]
    incident = [[] for _ in range(n)]
    sigs = {}
    left = []
    for k, (i, j, w) in enumerate(edges):
        key = f"w{k}"
        sigs[key] = edge_weight(w)
        a, b = f"m{k}a", f"m{k}b"
        left.append(Vertex(f"edge{k}", key, (a, b)))
        incident[i].append(a)
        incident[j].append(b)
    dangling = []
    for k, v in enumerate(dangling_at):
        label = f"x{k + 1}"
        incident[v].append(label)
        dangling.append(label)
    right = []
    for v in range(n):
        d = len(incident[v])
        if d == 0:
            raise ValueError(f"vertex {v} is isolated")
        key = f"one{d}"
        sigs.setdefault(key, exact_one(d))
        right.append(Vertex(names[v], key, tuple(incident[v])))
    return Instance(2, sigs, left, right, tuple(dangling))


def crossover_gadget() -> Instance:
    return matching_gadget(6, CROSSOVER_EDGES, dangling_at=(0, 1, 2, 3),
                           names=["a1", "a2", "a3", "a4", "b", "c"])


# -- planar drawing of a graph with crossovers at chord crossings -----------


@dataclass(frozen=True)
class Drawing:
    instance: Instance
    crossings: int
    segments: int


def _circle_points(n: int, rng) -> np.ndarray:
    angles = 2 * math.pi * np.arange(n) / n
    if rng is not None:
        angles = angles + rng.uniform(-0.2, 0.2, n) * (2 * math.pi / n)
    return np.stack([np.cos(angles), np.sin(angles)], axis=1)


def _chords_cross(a, b) -> bool:
    (i, j), (k, l) = sorted(a), sorted(b)
    return i < k < j < l or k < i < l < j


def _crossing_param(p, q, r, s) -> float:
    """Position along segment p->q where it meets segment r->s."""
    d1, d2 = q - p, s - r
    den = d1[0] * d2[1] - d1[1] * d2[0]
    diff = r - p
    return (diff[0] * d2[1] - diff[1] * d2[0]) / den


def planar_drawing(g: UnderlyingGraph, dangling: bool = False, seed=0) -> Drawing:
    """Vertices on a circle, edges as chords, a crossover C at every crossing.

    Each chord is cut into segments at its crossings; the first segment
    carries the edge weight as ``[1, 0, w]`` and the rest are ``[1, 0, 1]``.
    With ``dangling=True`` every vertex also gets an outward dangling edge,
    so the gadget computes an arity-n function of the deletion pattern.
    The geometry (floating point) only decides the order of crossings along
    each chord; which chords cross is decided combinatorially.
    """
    rng = np.random.default_rng(seed)
    pts = _circle_points(g.n, rng)
    chords = sorted(g.weights.items())
    # crossings met along each chord, ordered from its lower endpoint
    along = {c: [] for c, _ in chords}
    cross_ids = {}
    for a in range(len(chords)):
        for b in range(a + 1, len(chords)):
            ca, cb = chords[a][0], chords[b][0]
            if not _chords_cross(ca, cb):
                continue
            cid = len(cross_ids)
            cross_ids[(ca, cb)] = cid
            along[ca].append((_crossing_param(pts[ca[0]], pts[ca[1]], pts[cb[0]], pts[cb[1]]), cid))
            along[cb].append((_crossing_param(pts[cb[0]], pts[cb[1]], pts[ca[0]], pts[ca[1]]), cid))
    sigs = {"C": crossover(), "eq": edge_weight(ONE)}
    left = []
    incident = [[] for _ in range(g.n)]
    # slots[cid] = {chord: [near-end label, far-end label]}
    slots = {cid: {} for cid in cross_ids.values()}
    seg = 0
    for k, (chord, w) in enumerate(chords):
        i, j = chord
        stops = [cid for _, cid in sorted(along[chord])]
        nodes = [("v", i)] + [("x", cid) for cid in stops] + [("v", j)]
        for h in range(len(nodes) - 1):
            key = f"w{k}" if h == 0 else "eq"
            if h == 0:
                sigs[key] = edge_weight(w)
            a, b = f"s{seg}a", f"s{seg}b"
            left.append(Vertex(f"seg{seg}", key, (a, b)))
            seg += 1
            for node, label in ((nodes[h], a), (nodes[h + 1], b)):
                kind, idx = node
                if kind == "v":
                    incident[idx].append(label)
                else:
                    slots[idx].setdefault(chord, []).append(label)
    right = []
    for (ca, cb), cid in cross_ids.items():
        # chord a uses slots 1 and 3, chord b slots 2 and 4
        pa, pb = slots[cid][ca], slots[cid][cb]
        right.append(Vertex(f"cross{cid}", "C", (pa[0], pb[0], pa[1], pb[1])))
    dangling_labels = []
    for v in range(g.n):
        if dangling:
            label = f"x{v + 1}"
            incident[v].append(label)
            dangling_labels.append(label)
        d = len(incident[v])
        if d == 0:
            raise ValueError(f"vertex {v} is isolated; add a dangling edge")
        key = f"one{d}"
        sigs.setdefault(key, exact_one(d))
        right.append(Vertex(f"v{v}", key, tuple(incident[v])))
    inst = Instance(2, sigs, left, right, tuple(dangling_labels))
    return Drawing(inst, len(cross_ids), seg)


__all__ = [
    "exact_one",
    "edge_weight",
    "crossover",
    "CROSSOVER_EDGES",
    "matching_gadget",
    "crossover_gadget",
    "Drawing",
    "planar_drawing",
]
