"""Exact Gaussian rationals, the coefficient field Q(i)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from gmpy2 import mpq

__all__ = ["GaussianRational", "GR", "ZERO", "ONE", "I", "as_gr"]


def _q(value) -> mpq:
    if isinstance(value, type(mpq())):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(value)
    return mpq(value)


class GaussianRational:
    """Complex number ``re + i*im`` with arbitrary-precision rational parts.

    Values are immutable; equality and hashing are exact.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = as_gr(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __sub__(self, other):
        other = as_gr(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_gr(other) - self

    def __mul__(self, other):
        other = as_gr(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        a, b = self.re, self.im
        if not b:
            return GaussianRational._raw(1 / a, b)
        n = a * a + b * b
        return GaussianRational._raw(a / n, -b / n)

    def __truediv__(self, other):
        other = as_gr(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_gr(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    # comparison / hashing --------------------------------------------
    def __eq__(self, other):
        other = as_gr(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # text --------------------------------------------------------------
    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_coefficient(self)

    def denominator_lcm(self) -> int:
        a, b = int(self.re.denominator), int(self.im.denominator)
        return a * b // gcd(a, b)


GR = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def as_gr(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)) or isinstance(value, type(mpq())):
        return GaussianRational._raw(_q(value), mpq(0))
    if isinstance(value, complex):
        raise TypeError("floating complex values are not exact")
    return NotImplemented


def _fmt_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_coefficient(c: GaussianRational) -> str:
    """Plain text for a coefficient; parseable by the expression parser."""
    if not c.im:
        return _fmt_q(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_fmt_q(c.im)}*i"
    im = c.im
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    imtxt = "i" if mag == 1 else f"{_fmt_q(mag)}*i"
    return f"({_fmt_q(c.re)} {sign} {imtxt})"
