"""Exact Gaussian rationals ``a + b*i`` with ``a, b`` in Q.

All structure constants of the algebras handled here are rational, but the
ground field is C, so ``i`` is admitted so that isomorphism witnesses which
need it can still be written down exactly.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["Scalar", "ScalarLike", "ZERO", "ONE", "I", "as_scalar", "parse_rational"]

ScalarLike = Union["Scalar", int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse a ``"p/q"`` or ``"p"`` string; decimal points are rejected."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"rationals must be written as p/q, got {text!r}")
    return Fraction(text)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Scalar:
    """Immutable exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        self.re = parse_rational(re) if isinstance(re, str) else Fraction(re)
        self.im = parse_rational(im) if isinstance(im, str) else Fraction(im)
        self._hash = None

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "Scalar":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        obj._hash = None
        return obj

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: ScalarLike) -> "Scalar":
        o = as_scalar(other)
        return Scalar._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        o = as_scalar(other)
        return Scalar._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return as_scalar(other) - self

    def __neg__(self) -> "Scalar":
        return Scalar._make(-self.re, -self.im)

    def __pos__(self) -> "Scalar":
        return self

    def __mul__(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            return Scalar._make(self.re * other, self.im * other)
        o = as_scalar(other)
        if not self.im and not o.im:
            return Scalar._make(self.re * o.re, Fraction(0))
        return Scalar._make(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar._make(1 / self.re, Fraction(0))
        n = self.re * self.re + self.im * self.im
        return Scalar._make(self.re / n, -self.im / n)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        return Scalar._make(self.re, -self.im)

    # comparison -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.re) if not self.im else hash((self.re, self.im))
        return self._hash

    def is_real(self) -> bool:
        return not self.im

    def sort_key(self) -> tuple:
        return (self.re, self.im)

    # text -----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"re": _fmt(self.re), "im": _fmt(self.im)}

    @classmethod
    def from_json(cls, obj: dict) -> "Scalar":
        if not isinstance(obj, dict) or set(obj) - {"re", "im"}:
            raise ValueError(f"malformed scalar {obj!r}")
        re, im = obj.get("re", "0"), obj.get("im", "0")
        if not isinstance(re, str) or not isinstance(im, str):
            raise ValueError(f"scalar parts must be 'p/q' strings, got {obj!r}")
        return cls(parse_rational(re), parse_rational(im))

    def __str__(self) -> str:
        if not self.im:
            return _fmt(self.re)
        if not self.re:
            return f"{_fmt(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"({_fmt(self.re)}{sign}{_fmt(abs(self.im))}i)"

    def __repr__(self) -> str:
        return f"Scalar({self})"


def as_scalar(x: ScalarLike) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._make(Fraction(x), Fraction(0))
    if isinstance(x, Rational):
        return Scalar._make(Fraction(x.numerator, x.denominator), Fraction(0))
    if isinstance(x, complex):
        raise TypeError("floating point complex numbers are not exact scalars")
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
