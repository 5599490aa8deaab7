"""Shrinking the base of a holographic problem from width 2^t to 2^r.

A problem here is ``#F | M H``: left signatures over domain ``n``, a base
``M`` of size ``n x 2^t`` whose column index is read in the matrix-view
column convention (bit positions ``0..t-1``, most significant first), and
right signatures whose variables are bundles of ``t`` bits (domain ``2^t``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .canonical import CanonicalForm, canonicalize
from .holant import Problem, Report, transform_left, transform_right, verify_equivalent
from .matchgate import NotAMatchgateError, is_matchgate
from .tensor import MatrixView, Signature, _log2
from .transforms import Side, invert, log_matrix


@dataclass(frozen=True)
class HoloProblem:
    left: tuple[Signature, ...]
    base: np.ndarray
    right: tuple[Signature, ...]

    def __post_init__(self):
        base = linalg.as_matrix(self.base)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        n, width = base.shape
        _log2(width)
        for f in self.left:
            if any(d != n for d in f.domains):
                raise ValueError(f"left signature domains {f.domains} do not match base rows {n}")
        for h in self.right:
            if any(d != width for d in h.domains):
                raise ValueError(f"right signature domains {h.domains} do not match base width {width}")

    @property
    def n(self) -> int:
        return self.base.shape[0]

    @property
    def t(self) -> int:
        return _log2(self.base.shape[1])

    def problem(self) -> Problem:
        """``#F | M H`` as a plain Holant problem over domain ``n``."""
        return Problem(self.left, tuple(transform_right(self.base, h) for h in self.right))

    def holographic(self) -> Problem:
        """``#F M | H`` over domain ``2^t``."""
        return Problem(tuple(transform_left(f, self.base) for f in self.left), self.right)


@dataclass(frozen=True)
class Certificate:
    """What a collapse did, enough to replay it.

    ``col_log`` acts on the columns of ``base`` before stripping; ``kept``
    are the surviving column indices and ``constants`` the values of the
    stripped bit positions ``r..t-1``.
    """

    t: int
    r: int
    constants: tuple[int, ...]
    kept: tuple[int, ...]
    col_log: tuple = ()
    extra: dict = field(default_factory=dict, compare=False)

    def column_matrix(self) -> np.ndarray:
        return log_matrix(self.col_log, self.t, Side.OUTPUT)

    def replay(self, base) -> np.ndarray:
        """``M C`` with the logged column steps; zero outside ``kept``.

        A symmetric collapse works on ``SAM`` instead of ``M``, so when the
        certificate carries it that matrix is used.
        """
        start = self.extra.get("SAM")
        return linalg.matmul(linalg.as_matrix(base if start is None else start), self.column_matrix())


@dataclass(frozen=True)
class CollapsedProblem:
    problem: HoloProblem
    certificate: Certificate

    @property
    def r(self) -> int:
        return self.certificate.r

    @property
    def new_base(self) -> np.ndarray:
        return self.problem.base


# -- column stripping --------------------------------------------------------


def _column_bits(col: int, t: int) -> tuple[int, ...]:
    return tuple((col >> (t - 1 - p)) & 1 for p in range(t))


def _nonzero_columns(m: np.ndarray) -> list[int]:
    return [c for c in range(m.shape[1]) if any(m[:, c])]


def _detect_constants(m: np.ndarray, t: int, r: int | None):
    cols = [_column_bits(c, t) for c in _nonzero_columns(m)]
    if r is None:
        r = t
        while r > 0 and len({bits[r - 1] for bits in cols}) <= 1:
            r -= 1
    consts = []
    for p in range(r, t):
        seen = {bits[p] for bits in cols}
        consts.append(seen.pop() if len(seen) == 1 else 1)
    return r, tuple(consts)


def strip_columns(base, right=(), constants=None, r: int | None = None, left=()) -> CollapsedProblem:
    """Drop bit positions ``r..t-1`` on which every nonzero column of ``base`` is constant.

    The new base keeps the columns whose stripped bits equal ``constants``;
    every right signature is restricted the same way on each bundle, which is
    the same as attaching ``[1, 0]`` or ``[0, 1]`` to the stripped bits.
    With ``constants=None`` they are read off the nonzero columns (1 when
    the base is zero), and ``r`` defaults to the smallest possible width.
    """
    m = linalg.as_matrix(base)
    t = _log2(m.shape[1])
    if constants is None:
        r, constants = _detect_constants(m, t, r)
    constants = tuple(int(c) for c in constants)
    if r is None:
        r = t - len(constants)
    if r + len(constants) != t or any(c not in (0, 1) for c in constants):
        raise ValueError(f"need {t - (r or 0)} constants in {{0, 1}}, got {constants}")
    for c in _nonzero_columns(m):
        bits = _column_bits(c, t)
        if bits[r:] != constants:
            raise ValueError(
                f"column {c} (bits {''.join(map(str, bits))}) is nonzero but stripped bits "
                f"differ from {''.join(map(str, constants))}"
            )
    low = 0
    for c in constants:
        low = (low << 1) | c
    kept = tuple((high << (t - r)) | low for high in range(2**r))
    new_base = m[:, list(kept)]
    new_right = []
    for h in right:
        new_right.append(Signature._wrap(h.values[np.ix_(*[list(kept)] * h.arity)]) if h.arity else h)
    cert = Certificate(t, r, constants, kept)
    return CollapsedProblem(HoloProblem(tuple(left), new_base, tuple(new_right)), cert)


# -- realizer and cover -------------------------------------------------------


def _matchgate_view(mat: np.ndarray, what: str) -> MatrixView:
    view = MatrixView.binary(mat)
    res = is_matchgate(view.sig)
    if not res:
        raise NotAMatchgateError(f"{what} is not a matchgate (mismatch at input {res.mismatch})", res.mismatch)
    return view


def _collapse_with(form: CanonicalForm, base: np.ndarray, left, right, extra: dict) -> CollapsedProblem:
    t = _log2(base.shape[1])
    col = log_matrix(form.col_log, t, Side.OUTPUT)
    col_inv = log_matrix(invert(form.col_log), t, Side.OUTPUT)
    moved = linalg.matmul(base, col)
    moved_right = [transform_right(col_inv, h) for h in right]
    stripped = strip_columns(moved, moved_right, (1,) * (t - form.r), form.r, left)
    c = stripped.certificate
    cert = Certificate(t, form.r, c.constants, c.kept, form.col_log, extra)
    return CollapsedProblem(stripped.problem, cert)


def collapse_via_realizer(base, realizer, left=(), right=()) -> CollapsedProblem:
    """Collapse using a full-rank matchgate realizer ``A``: ``A M`` is a matchgate with ``rank(AM) = rank(M)``."""
    m = linalg.as_matrix(base)
    a = realizer.matrix() if isinstance(realizer, MatrixView) else linalg.as_matrix(realizer)
    am = linalg.matmul(a, m)
    rank_m, rank_am = linalg.rank(m), linalg.rank(am)
    if rank_m != rank_am:
        raise ValueError(f"not a full-rank realizer: rank(AM) = {rank_am}, rank(M) = {rank_m}")
    view = _matchgate_view(am, "AM")
    form = canonicalize(view)
    return _collapse_with(form, m, left, right, {"canonical": form, "A": a})


def collapse_via_cover(base, cover, coefficients, left=(), right=()) -> CollapsedProblem:
    """Collapse using a matchgate cover ``P`` with ``Q P = M``."""
    m = linalg.as_matrix(base)
    p = cover.matrix() if isinstance(cover, MatrixView) else linalg.as_matrix(cover)
    q = linalg.as_matrix(coefficients)
    if q.shape[1] != p.shape[0] or q.shape[0] != m.shape[0] or p.shape[1] != m.shape[1]:
        raise ValueError(f"shapes do not fit: Q {q.shape}, P {p.shape}, M {m.shape}")
    qp = linalg.matmul(q, p)
    for (i, j), v in np.ndenumerate(qp):
        if v != m[i, j]:
            raise ValueError(f"QP differs from M at ({i}, {j}): {v} != {m[i, j]}")
    view = _matchgate_view(p, "cover P")
    form = canonicalize(view)
    rows = log_matrix(form.row_log, view.s, Side.INPUT)
    return _collapse_with(form, m, left, right, {"canonical": form, "P": p, "Q": q, "B": rows})


# -- symmetric left signature -------------------------------------------------


def realizer_of_symmetric(f: Signature, base) -> np.ndarray:
    """``A = M'^{(x)(s-1)} F`` flattened to ``2^{t(s-1)} x n``."""
    m = linalg.as_matrix(base)
    vals = f.values
    for i in range(f.arity - 1):
        vals = np.moveaxis(np.tensordot(vals, m, axes=([i], [0])), -1, i)
    return vals.reshape(-1, m.shape[0])


def collapse_symmetric(f: Signature, base, right=()) -> CollapsedProblem:
    """Collapse ``#{F} | M H`` for a symmetric ``F`` whose generator ``F M^{(x)s}`` is a matchgate."""
    m = linalg.as_matrix(base)
    n = m.shape[0]
    if f.arity < 1 or any(d != n for d in f.domains):
        raise ValueError(f"F must be over domain {n}")
    if not f.is_symmetric():
        raise ValueError("F is not symmetric")
    a = realizer_of_symmetric(f, m)
    am = linalg.matmul(a, m)
    _matchgate_view(am, "generator F M^s")
    sel = linalg.independent_rows(am)
    sam = am[sel, :]
    rest = linalg.complete_basis(sam, m)
    b = np.concatenate([sam, m[rest, :]], axis=0) if rest else sam
    try:
        c = linalg.solve_left(b, m)
    except ValueError as exc:
        raise ValueError(f"rows of M are not spanned by SAM and T: {exc}") from None
    c1 = c[:, : len(sel)]
    new_left = transform_left(f, c1)
    if transform_left(new_left, sam) != transform_left(f, m):
        raise ValueError("F C1^s (SAM)^s differs from F M^s; no symmetric collapse for this input")
    inner = collapse_via_realizer(sam, linalg.matmul(a, c1), (new_left,), right)
    extra = dict(inner.certificate.extra, S=tuple(sel), T=tuple(rest), C1=c1, SAM=sam)
    cert = Certificate(
        inner.certificate.t, inner.certificate.r, inner.certificate.constants,
        inner.certificate.kept, inner.certificate.col_log, extra,
    )
    return CollapsedProblem(inner.problem, cert)


def verify_collapse(original: HoloProblem, collapsed: CollapsedProblem, trials: int = 10, seed=0,
                    max_edges: int = 6, holographic: bool = False) -> Report:
    """Compare ``#F | M H`` with the collapsed problem on random instances."""
    a = original.problem()
    b = collapsed.problem.holographic() if holographic else collapsed.problem.problem()
    return verify_equivalent(a, b, trials, seed, max_edges)


__all__ = [
    "HoloProblem",
    "Certificate",
    "CollapsedProblem",
    "strip_columns",
    "collapse_via_realizer",
    "collapse_via_cover",
    "realizer_of_symmetric",
    "collapse_symmetric",
    "verify_collapse",
]
