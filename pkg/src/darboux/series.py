"""Truncated fractional (Laurent-Puiseux) power series in x.

A :class:`PuiseuxSeries` stores the terms ``a_i x^(i/n)`` for integer
``i``.  Every coefficient with ``i < trunc`` is known exactly, including
the zero ones; ``trunc`` is ``math.inf`` for series known completely
(finite sums).  Arithmetic propagates the bound so that "zero to
truncation" is a statement about computed coefficients only.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd

from .errors import SeriesError
from .field import GR, ONE, ZERO, as_gr, format_coefficient

INF = math.inf


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _floor_div(t, g):
    return t if t == INF else t // g


class PuiseuxSeries:
    __slots__ = ("n", "coeffs", "trunc")

    def __init__(self, coeffs=None, n: int = 1, trunc=INF):
        if n < 1:
            raise ValueError("polydromy order must be positive")
        clean = {}
        if coeffs:
            for i, c in coeffs.items():
                if i < trunc:
                    c = as_gr(c)
                    if c:
                        clean[i] = c
        g = n
        for i in clean:
            g = gcd(g, i)
            if g == 1:
                break
        if g > 1:
            clean = {i // g: c for i, c in clean.items()}
            n //= g
            trunc = _floor_div(trunc, g)
        self.n = n
        self.coeffs = clean
        self.trunc = trunc

    # constructors ------------------------------------------------------
    @classmethod
    def const(cls, c, trunc=INF) -> "PuiseuxSeries":
        return cls({0: c}, 1, trunc)

    @classmethod
    def zero(cls, trunc=INF) -> "PuiseuxSeries":
        return cls({}, 1, trunc)

    @classmethod
    def monomial(cls, c, num: int, den: int = 1) -> "PuiseuxSeries":
        """``c * x^(num/den)``."""
        return cls({num: c}, den)

    @classmethod
    def from_upoly(cls, p) -> "PuiseuxSeries":
        return cls({i: c for i, c in enumerate(p) if c}, 1)

    # queries -----------------------------------------------------------
    @property
    def min_exp(self):
        return min(self.coeffs) if self.coeffs else None

    @property
    def valuation(self):
        """Lower bound on the smallest exponent numerator (trunc if zero)."""
        return min(self.coeffs) if self.coeffs else self.trunc

    def is_exact(self) -> bool:
        return self.trunc == INF

    def is_zero(self) -> bool:
        """Zero up to the truncation bound."""
        return not self.coeffs

    def coefficient(self, num: int, den: int = 1) -> GR:
        """Coefficient of ``x^(num/den)``; raises if beyond the truncation."""
        e = Fraction(num, den)
        if e * self.n >= self.trunc:
            raise SeriesError(f"coefficient of x^{e} lies beyond the truncation")
        if (e * self.n).denominator != 1:
            return ZERO
        return self.coeffs.get(int(e * self.n), ZERO)

    def exponent_bound(self):
        """Truncation bound as an exponent of x (Fraction or inf)."""
        return INF if self.trunc == INF else Fraction(self.trunc, self.n)

    def terms(self):
        """Sorted list of ``(exponent as Fraction, coefficient)``."""
        return [(Fraction(i, self.n), self.coeffs[i]) for i in sorted(self.coeffs)]

    def with_n(self, n: int):
        """Coefficients and truncation rescaled to denominator ``n``."""
        if n % self.n:
            raise ValueError("target denominator must be a multiple")
        f = n // self.n
        return {i * f: c for i, c in self.coeffs.items()}, (self.trunc * f if self.trunc != INF else INF)

    def truncate(self, trunc_exp) -> "PuiseuxSeries":
        """Cut to exponents strictly below ``trunc_exp`` (an exponent of x)."""
        if trunc_exp == INF:
            return self
        e = Fraction(trunc_exp)
        n = _lcm(self.n, e.denominator)
        cs, t = self.with_n(n)
        new_t = int(e * n)
        return PuiseuxSeries(cs, n, min(t, new_t))

    def is_polynomial_to_truncation(self) -> bool:
        """All known terms have nonnegative integer exponents."""
        return all(i >= 0 and i % self.n == 0 for i in self.coeffs)

    def conjugate(self) -> "PuiseuxSeries":
        return PuiseuxSeries({i: c.conjugate() for i, c in self.coeffs.items()}, self.n, self.trunc)

    # arithmetic --------------------------------------------------------
    def _align(self, other):
        n = _lcm(self.n, other.n)
        a, ta = self.with_n(n)
        b, tb = other.with_n(n)
        return n, a, ta, b, tb

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n, a, ta, b, tb = self._align(other)
        out = dict(a)
        for i, c in b.items():
            out[i] = out.get(i, ZERO) + c
        return PuiseuxSeries(out, n, min(ta, tb))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries({i: -c for i, c in self.coeffs.items()}, self.n, self.trunc)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(other.coeffs) == 1 and other.trunc == INF and other.n == 1 and 0 in other.coeffs:
            return self.scale(other.coeffs[0])
        n, a, ta, b, tb = self._align(other)
        va = min(a) if a else ta
        vb = min(b) if b else tb
        trunc = min(ta + vb, tb + va)
        out = {}
        for i, c in a.items():
            lim = trunc - i
            for j, d in b.items():
                if j < lim:
                    k = i + j
                    v = out.get(k)
                    out[k] = c * d if v is None else v + c * d
        return PuiseuxSeries(out, n, trunc)

    __rmul__ = __mul__

    def scale(self, c) -> "PuiseuxSeries":
        c = as_gr(c)
        return PuiseuxSeries({i: v * c for i, v in self.coeffs.items()}, self.n, self.trunc)

    def shift(self, num: int, den: int = 1) -> "PuiseuxSeries":
        """Multiply by ``x^(num/den)``."""
        n = _lcm(self.n, den)
        cs, t = self.with_n(n)
        s = num * (n // den)
        return PuiseuxSeries({i + s: c for i, c in cs.items()}, n, t + s if t != INF else INF)

    def derivative(self) -> "PuiseuxSeries":
        n = self.n
        out = {i - n: c * Fraction(i, n) for i, c in self.coeffs.items() if i}
        return PuiseuxSeries(out, n, self.trunc - n if self.trunc != INF else INF)

    def reciprocal(self, order=None) -> "PuiseuxSeries":
        """Multiplicative inverse.

        For exact series with more than one term the result is infinite;
        ``order`` (an exponent of x) then fixes the truncation.
        """
        if not self.coeffs:
            raise SeriesError("reciprocal of a series that is zero to truncation")
        n = self.n
        v = min(self.coeffs)
        lead_inv = self.coeffs[v].inverse()
        if self.trunc == INF and len(self.coeffs) == 1:
            return PuiseuxSeries({-v: lead_inv}, n)
        if self.trunc == INF:
            if order is None:
                raise SeriesError("reciprocal of an exact multi-term series needs an order")
            trunc = math.ceil(Fraction(order) * n)
        else:
            trunc = self.trunc - 2 * v
            if order is not None:
                trunc = min(trunc, math.ceil(Fraction(order) * n))
        rel = {i - v: c * lead_inv for i, c in self.coeffs.items() if i != v}
        # b_0 = 1, b_k = -sum_{j>=1} rel_j b_{k-j}
        length = trunc + v
        b = [ZERO] * max(length, 0)
        if length > 0:
            b[0] = ONE
        rel_items = sorted(rel.items())
        for k in range(1, length):
            acc = ZERO
            for j, c in rel_items:
                if j > k:
                    break
                if b[k - j]:
                    acc = acc + c * b[k - j]
            b[k] = -acc
        out = {k - v: bk * lead_inv for k, bk in enumerate(b) if bk}
        return PuiseuxSeries(out, n, trunc)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.trunc == INF and len(other.coeffs) == 1:
            (i, c), = other.coeffs.items()
            return self.scale(c.inverse()).shift(-i, other.n)
        order = None
        if other.trunc == INF and self.trunc != INF:
            va = Fraction(self.valuation, self.n)
            vb = Fraction(other.valuation, other.n)
            order = Fraction(self.trunc, self.n) - vb - va
        return self * other.reciprocal(order)

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = PuiseuxSeries.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def equal_to_truncation(self, other) -> bool:
        diff = self - _coerce(other)
        return diff.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.n == other.n and self.coeffs == other.coeffs and self.trunc == other.trunc

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items()), self.trunc))

    def sort_key(self):
        v = self.min_exp
        head = (Fraction(v, self.n) if v is not None else Fraction(10**9),)
        return head + tuple((Fraction(i, self.n), c.re, c.im) for i, c in sorted(self.coeffs.items()))

    # text ---------------------------------------------------------------
    def to_text(self) -> str:
        parts = []
        for i in sorted(self.coeffs):
            c = self.coeffs[i]
            e = Fraction(i, self.n)
            mono = _xpow(e)
            ctext = format_coefficient(c)
            if not mono:
                body = ctext
            elif ctext == "1":
                body = mono
            elif ctext == "-1":
                body = "-" + mono
            else:
                body = f"{ctext}*{mono}"
            parts.append(body)
        if self.trunc != INF:
            parts.append(f"O({_xpow(Fraction(self.trunc, self.n)) or '1'})")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __str__ = to_text

    def __repr__(self):
        return f"PuiseuxSeries({self.to_text()!r})"

    def __complex__(self):
        raise TypeError("series have no numeric value")


def _xpow(e: Fraction) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "x"
    if e.denominator == 1:
        return f"x^{e.numerator}" if e > 0 else f"x^({e.numerator})"
    return f"x^({e.numerator}/{e.denominator})"


def _coerce(v):
    if isinstance(v, PuiseuxSeries):
        return v
    c = as_gr(v)
    if c is NotImplemented:
        return NotImplemented
    return PuiseuxSeries.const(c)


def polydromy(s: PuiseuxSeries) -> int:
    """Reduced polydromy order of a series that is nonzero to truncation."""
    if s.is_zero():
        raise SeriesError("polydromy order of a zero series is undefined")
    return s.n


def lcm_all(values) -> int:
    out = 1
    for v in values:
        out = _lcm(out, v)
    return out
