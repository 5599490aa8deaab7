"""Signatures as dense tensors, and their matrix views.

A :class:`Signature` stores one value per assignment of its variables in a
numpy object array whose shape is the tuple of domain sizes, so the flat
order is mixed radix with variable 1 most significant.

A :class:`MatrixView` splits the variables into ``s`` inputs and ``t``
outputs.  Rows are indexed by ``e_1 ... e_s`` (most significant first) and
columns by ``e_{s+t} ... e_{s+1}``, i.e. the output bundle is read in
reverse.  With that convention, joining the outputs of one gadget to the
inputs of the next is plain matrix multiplication.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

import numpy as np

from . import linalg
from .scalar import ONE, ZERO, Scalar, as_scalar


class Signature:
    """Immutable function from a product of finite domains to Scalars."""

    __slots__ = ("values",)

    def __init__(self, values):
        arr = np.asarray(values, dtype=object)
        if arr.ndim and 0 in arr.shape:
            raise ValueError("empty domain")
        out = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(arr):
            out[idx] = x if isinstance(x, Scalar) else as_scalar(x)
        if any(d < 2 for d in out.shape):
            raise ValueError(f"domain sizes must be >= 2, got {out.shape}")
        out.flags.writeable = False
        self.values = out

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Signature":
        obj = object.__new__(cls)
        # ascontiguousarray would promote 0-d arrays to 1-d
        arr = np.array(arr, dtype=object, order="C")
        arr.flags.writeable = False
        obj.values = arr
        return obj

    @classmethod
    def from_flat(cls, domains, flat) -> "Signature":
        domains = tuple(domains)
        flat = list(flat)
        if len(flat) != prod(domains):
            raise ValueError(f"{len(flat)} values for domains {domains}")
        arr = np.empty(len(flat), dtype=object)
        arr[:] = flat
        return cls(arr.reshape(domains))

    @classmethod
    def from_function(cls, domains, fn) -> "Signature":
        domains = tuple(domains)
        return cls.from_flat(domains, [fn(x) for x in itertools.product(*map(range, domains))])

    @classmethod
    def zeros(cls, domains) -> "Signature":
        domains = tuple(domains)
        arr = np.empty(domains, dtype=object)
        arr.fill(ZERO)
        return cls._wrap(arr)

    @classmethod
    def symmetric(cls, values, domain: int = 2) -> "Signature":
        """Boolean symmetric function ``[F_0, ..., F_d]`` indexed by Hamming weight."""
        if domain != 2:
            raise ValueError("weight notation is for Boolean variables")
        vals = [as_scalar(v) for v in values]
        d = len(vals) - 1
        return cls.from_function((2,) * d, lambda x: vals[sum(x)])

    @property
    def domains(self) -> tuple[int, ...]:
        return self.values.shape

    @property
    def arity(self) -> int:
        return self.values.ndim

    def __getitem__(self, x) -> Scalar:
        return self.values[tuple(x)]

    def flat(self) -> list[Scalar]:
        return list(self.values.flat)

    def items(self):
        return np.ndenumerate(self.values)

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self.domains == other.domains and all(
            a == b for a, b in zip(self.values.flat, other.values.flat)
        )

    def __hash__(self):
        return hash((self.domains, tuple(self.values.flat)))

    def __repr__(self):
        if self.arity == 0:
            return f"Signature({self.values[()]})"
        vals = ", ".join(x.compact() for x in self.values.flat)
        return f"Signature(domains={self.domains}, [{vals}])"

    def is_zero(self) -> bool:
        return not any(self.values.flat)

    def scale(self, c) -> "Signature":
        c = as_scalar(c)
        return Signature._wrap(self.values * c)

    def __add__(self, other: "Signature") -> "Signature":
        if self.domains != other.domains:
            raise ValueError("domain mismatch")
        return Signature._wrap(self.values + other.values)

    def permute(self, order) -> "Signature":
        """New signature ``G(x_0..x_{k-1}) = F`` with variable ``i`` of G being ``order[i]`` of F."""
        return Signature._wrap(np.transpose(self.values, tuple(order)))

    def pin(self, var: int, value: int) -> "Signature":
        """Restrict variable ``var`` to ``value`` (connect a unary indicator)."""
        return Signature._wrap(np.take(self.values, value, axis=var))

    def reshape(self, domains) -> "Signature":
        """Regroup variables; e.g. ``(2,)*6 -> (4, 4, 4)`` bundles bit pairs, first bit high."""
        domains = tuple(domains)
        if prod(domains) != self.values.size:
            raise ValueError(f"cannot reshape {self.domains} to {domains}")
        return Signature._wrap(self.values.reshape(domains))

    def is_symmetric(self) -> bool:
        if len(set(self.domains)) > 1:
            return False
        for perm in itertools.permutations(range(self.arity)):
            if not _arr_equal(np.transpose(self.values, perm), self.values):
                return False
        return True


def _arr_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def constant(c) -> Signature:
    """Arity-0 signature: a closed instance value."""
    arr = np.empty((), dtype=object)
    arr[()] = as_scalar(c)
    return Signature._wrap(arr)


def unary(values) -> Signature:
    return Signature([as_scalar(v) for v in values])


@dataclass(frozen=True)
class MatrixView:
    """A signature read as a matrix with ``s`` row variables and ``t`` column variables."""

    sig: Signature
    s: int

    def __post_init__(self):
        if not 0 <= self.s <= self.sig.arity:
            raise ValueError(f"bad split s={self.s} for arity {self.sig.arity}")

    @property
    def t(self) -> int:
        return self.sig.arity - self.s

    @property
    def row_domains(self) -> tuple[int, ...]:
        return self.sig.domains[: self.s]

    @property
    def col_domains(self) -> tuple[int, ...]:
        """Domains of e_{s+1}..e_{s+t}, in variable order (not column-index order)."""
        return self.sig.domains[self.s :]

    @property
    def shape(self) -> tuple[int, int]:
        return prod(self.row_domains), prod(self.col_domains)

    def matrix(self) -> np.ndarray:
        k = self.sig.arity
        axes = tuple(range(self.s)) + tuple(range(k - 1, self.s - 1, -1))
        return np.transpose(self.sig.values, axes).reshape(self.shape).copy()

    @classmethod
    def from_matrix(cls, mat, row_domains, col_domains) -> "MatrixView":
        """Inverse of :meth:`matrix`; ``col_domains`` lists e_{s+1}..e_{s+t}."""
        mat = linalg.as_matrix(mat)
        row_domains, col_domains = tuple(row_domains), tuple(col_domains)
        if mat.shape != (prod(row_domains), prod(col_domains)):
            raise ValueError(f"matrix shape {mat.shape} does not fit {row_domains} x {col_domains}")
        s, t = len(row_domains), len(col_domains)
        arr = mat.reshape(row_domains + col_domains[::-1])
        axes = tuple(range(s)) + tuple(range(s + t - 1, s - 1, -1))
        return cls(Signature._wrap(np.transpose(arr, axes)), s)

    @classmethod
    def binary(cls, mat) -> "MatrixView":
        """View of a 2^s x 2^t matrix over Boolean variables."""
        mat = linalg.as_matrix(mat)
        s, t = _log2(mat.shape[0]), _log2(mat.shape[1])
        return cls.from_matrix(mat, (2,) * s, (2,) * t)

    def __eq__(self, other):
        if not isinstance(other, MatrixView):
            return NotImplemented
        return self.s == other.s and self.sig == other.sig

    def __hash__(self):
        return hash((self.sig, self.s))


def _log2(n: int) -> int:
    k = n.bit_length() - 1
    if n <= 0 or (1 << k) != n:
        raise ValueError(f"{n} is not a power of two")
    return k


def regroup(sig: Signature, s: int, t: int | None = None) -> MatrixView:
    """Pure re-indexing of ``sig`` as an (s, t) matrix view."""
    if t is not None and s + t != sig.arity:
        raise ValueError(f"split ({s}, {t}) does not match arity {sig.arity}")
    return MatrixView(sig, s)


def tensor_product(a: Signature, b: Signature) -> Signature:
    """``(a (x) b)(x, y) = a(x) b(y)``; variables of ``a`` come first."""
    return Signature._wrap(np.multiply.outer(a.values, b.values))


def kron(a: MatrixView, b: MatrixView) -> MatrixView:
    """Matrix-level Kronecker product ``A (x) B`` as a gadget.

    Variables are ordered as ``a``'s inputs, ``b``'s inputs, ``b``'s outputs,
    ``a``'s outputs, which is the planar nesting that makes the column index
    come out as ``(col_a, col_b)``.
    """
    mat = linalg.kron(a.matrix(), b.matrix())
    return MatrixView.from_matrix(
        mat, a.row_domains + b.row_domains, b.col_domains + a.col_domains
    )


def matrix_product(a: MatrixView, b: MatrixView) -> MatrixView:
    """Join the outputs of ``a`` to the inputs of ``b``.

    The result has ``a``'s input variables followed by ``b``'s output variables.
    """
    if a.col_domains[::-1] != b.row_domains:
        raise ValueError(
            f"cannot join outputs {a.col_domains[::-1]} (column order) to inputs {b.row_domains}"
        )
    mat = linalg.matmul(a.matrix(), b.matrix())
    return MatrixView.from_matrix(mat, a.row_domains, b.col_domains)


def rank(m: MatrixView | np.ndarray) -> int:
    mat = m.matrix() if isinstance(m, MatrixView) else m
    return linalg.rank(mat)


def identity_view(k: int, domain: int = 2) -> MatrixView:
    """The identity on ``k`` variables: a (k, k) view of the wiring gadget."""
    return MatrixView.from_matrix(linalg.identity(domain**k), (domain,) * k, (domain,) * k)


__all__ = [
    "Signature",
    "MatrixView",
    "constant",
    "unary",
    "regroup",
    "tensor_product",
    "kron",
    "matrix_product",
    "rank",
    "identity_view",
    "ONE",
    "ZERO",
]
