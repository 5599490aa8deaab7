"""Exact Gaussian rationals ``a + b i`` with ``a, b`` in Q.

Every signature value, edge weight and matrix entry in the package is a
:class:`Scalar`.  Equality is exact, so zero tests are decidable and the
canonical-form and collapse code can branch on them.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "ZERO", "ONE", "as_scalar", "parse_scalar"]


class Scalar:
    """Immutable complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, str):
            if im != 0:
                raise TypeError("string form already carries the imaginary part")
            parsed = parse_scalar(re)
            re, im = parsed.re, parsed.im
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "Scalar":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return Scalar._raw(a * c, _FZERO)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        a, b = self.re, self.im
        norm = a * a + b * b
        if not norm:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar._raw(a / norm, -b / norm)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # text ---------------------------------------------------------------

    def __str__(self):
        return format_full(self)

    def __repr__(self):
        return f"Scalar('{format_full(self)}')"

    def compact(self) -> str:
        """Short form: ``3/2`` for reals, ``1/2-3 i`` otherwise."""
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im} i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)} i"


_FZERO = Fraction(0)
ZERO = Scalar._raw(Fraction(0), Fraction(0))
ONE = Scalar._raw(Fraction(1), Fraction(0))


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        return Scalar._raw(Fraction(x), _FZERO)
    if isinstance(x, complex):
        return Scalar._raw(Fraction(x.real), Fraction(x.imag))
    return None


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, exact complex literals or strings to a Scalar."""
    if isinstance(x, str):
        return parse_scalar(x)
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return s


def _frac_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_full(x: Scalar) -> str:
    """Canonical text ``a/b+c/d i`` (reduced fractions, explicit denominators)."""
    sign = "-" if x.im < 0 else "+"
    return f"{_frac_text(x.re)}{sign}{_frac_text(abs(x.im))} i"


def parse_scalar(text: str) -> Scalar:
    """Parse ``a/b+c/d i``, ``3/2``, ``-2 i``, ``i`` and similar forms."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty scalar literal")
    try:
        if s.endswith("i"):
            body = s[:-1]
            cut = max(body.rfind("+"), body.rfind("-"))
            if cut > 0:
                re_part, im_part = body[:cut], body[cut:]
            else:
                re_part, im_part = "0", body
            if im_part in ("", "+"):
                im_part = "1"
            elif im_part == "-":
                im_part = "-1"
            return Scalar._raw(Fraction(re_part), Fraction(im_part))
        return Scalar._raw(Fraction(s), _FZERO)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad scalar literal {text!r}") from exc
