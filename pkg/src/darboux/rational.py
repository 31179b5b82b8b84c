"""Rational functions over Q(i) and rational logarithmic derivatives."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import upoly
from .errors import ExtensionRequired, SeriesError
from .field import ONE, ZERO, as_gr
from .poly import BivarPoly, divide_exact, gcd_poly
from .series import PuiseuxSeries


class RationalFunction:
    """``num/den`` in lowest terms, ``den`` with leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _poly(num)
        den = BivarPoly.const(1) if den is None else _poly(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            den = BivarPoly.const(1)
        elif not den.is_constant():
            g = gcd_poly(num, den)
            if not g.is_constant():
                num = divide_exact(num, g)
                den = divide_exact(den, g)
        lc = den.leading_coefficient().inverse()
        self.num = num.scale(lc)
        self.den = den.scale(lc)

    @classmethod
    def from_upolys(cls, num, den=(ONE,)) -> "RationalFunction":
        return cls(BivarPoly.from_x_upoly(num), BivarPoly.from_x_upoly(den))

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def depends_on_y(self) -> bool:
        return self.num.deg_y > 0 or self.den.deg_y > 0

    def __add__(self, other):
        other = _rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_rf(other))

    def __rsub__(self, other):
        return _rf(other) - self

    def __mul__(self, other):
        other = _rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rf(other)
        if not other.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _rf(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction(self.den**-k, self.num**-k)
        return RationalFunction(self.num**k, self.den**k)

    def diff(self, var: str = "x") -> "RationalFunction":
        return RationalFunction(
            self.num.diff(var) * self.den - self.num * self.den.diff(var), self.den * self.den
        )

    def __eq__(self, other):
        try:
            other = _rf(other)
        except TypeError:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, x, y=0):
        return self.num.evaluate(x, y) / self.den.evaluate(x, y)

    def x_upolys(self):
        if self.depends_on_y():
            raise ValueError("rational function depends on y")
        return _x_upoly(self.num), _x_upoly(self.den)

    def to_series(self, order=24) -> PuiseuxSeries:
        """Laurent expansion at x = 0, exact when the denominator is a monomial.

        ``order`` is the exponent of x below which the result is certified.
        """
        n, d = self.x_upolys()
        num = PuiseuxSeries.from_upoly(n)
        den = PuiseuxSeries.from_upoly(d)
        if len(den.coeffs) == 1:
            return num / den
        vn = num.valuation if num.coeffs else 0
        vd = den.valuation
        return (num * den.reciprocal(Fraction(order) - vn + vd)).truncate(order)

    def to_text(self) -> str:
        if self.den.is_constant():
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    __str__ = to_text

    def __repr__(self):
        return f"RationalFunction({self.to_text()!r})"


def _poly(v) -> BivarPoly:
    if isinstance(v, BivarPoly):
        return v
    if isinstance(v, (tuple, list)):
        return BivarPoly.from_x_upoly(v)
    return BivarPoly.const(v)


def _rf(v) -> RationalFunction:
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, BivarPoly):
        return RationalFunction(v)
    c = as_gr(v)
    if c is NotImplemented:
        raise TypeError(f"cannot convert {type(v).__name__} to a rational function")
    return RationalFunction(BivarPoly.const(c))


def _x_upoly(p: BivarPoly):
    cs = [ZERO] * (p.deg_x + 1 if p else 0)
    for (i, _), c in p.terms.items():
        cs[i] = c
    return upoly.strip(cs)


def _taylor_shift(p, a):
    """Coefficients of p(a + t) in t."""
    out = []
    cur = list(p)
    while cur:
        q, r = upoly.divmod_(cur, upoly.strip([-a, ONE]))
        out.append(r[0] if r else ZERO)
        cur = list(q)
    return upoly.strip(out)


# --- rational logarithmic derivatives -----------------------------------------


@dataclass
class LogDerivativeSpec:
    """A function of x given through its logarithmic derivative.

    ``closed_form`` lists ``(u(x), c)`` meaning a factor ``u^c``; ``exp_part``
    is a rational function ``e(x)`` meaning a factor ``exp(e)``.
    """

    logderiv: RationalFunction
    closed_form: list = field(default=None)
    exp_part: RationalFunction = None

    def __post_init__(self):
        if self.logderiv.depends_on_y():
            raise ValueError("log-derivative must depend on x only")
        if self.closed_form is not None:
            if self.formal_logderiv() != self.logderiv:
                raise ValueError("closed form does not match the log-derivative")

    def formal_logderiv(self) -> RationalFunction:
        total = RationalFunction(0)
        for u, c in self.closed_form or []:
            u = _poly(u)
            total = total + RationalFunction(u.diff("x").scale(c), u)
        if self.exp_part is not None:
            total = total + self.exp_part.diff("x")
        return total

    @classmethod
    def from_closed_form(cls, factors, exp_part=None) -> "LogDerivativeSpec":
        spec = cls(RationalFunction(0), None, exp_part)
        spec.closed_form = [(_poly(u), as_gr(c)) for u, c in factors]
        spec.logderiv = spec.formal_logderiv()
        return spec

    @classmethod
    def one(cls) -> "LogDerivativeSpec":
        return cls(RationalFunction(0), [], None)


def integrate_log_derivative(r: RationalFunction) -> LogDerivativeSpec:
    """Closed form ``prod u(x)^c * exp(e(x))`` with ``d log / dx = r``.

    Repeated poles must lie in Q(i) and every simple nonlinear pole factor
    ``u`` must carry a residue part ``c u'/u``; ExtensionRequired otherwise.
    """
    num, den = r.x_upolys()
    quot, rem = upoly.divmod_(num, den)
    factors = []
    exp_part = RationalFunction(BivarPoly.from_x_upoly(
        upoly.strip([ZERO] + [c / (k + 1) for k, c in enumerate(quot)])
    ))
    if rem:
        for u, m in upoly.irreducible_factors(den):
            others = den
            for _ in range(m):
                others, _r = upoly.divmod_(others, u)
            if len(u) > 2:
                factors.append(_nonlinear_pole(rem, u, m, others))
                continue
            a = -u[0]
            # rem/den = t^-m * rem(a+t)/others(a+t); expand to order m
            laurent = _series_quotient(_taylor_shift(rem, a), _taylor_shift(others, a), m)
            for k in range(1, m + 1):
                c = laurent[m - k]
                if not c:
                    continue
                if k == 1:
                    factors.append((BivarPoly.from_x_upoly(u), c))
                else:
                    exp_part = exp_part + RationalFunction(
                        BivarPoly.const(-c / (k - 1)), BivarPoly.from_x_upoly(u) ** (k - 1)
                    )
    spec = LogDerivativeSpec(r, None, exp_part if exp_part else None)
    spec.closed_form = factors
    if spec.formal_logderiv() != r:
        raise SeriesError("internal: partial-fraction integration failed")
    return spec


def _nonlinear_pole(rem, u, m, others):
    """Factor ``u^c`` for an irreducible nonlinear pole factor, if it exists."""
    if m > 1:
        raise ExtensionRequired(upoly.format_upoly(u, "x"))
    # partial-fraction numerator A = rem * others^-1 mod u
    g, s_inv = _inverse_mod(others, u)
    A = upoly.divmod_(upoly.mul(rem, s_inv), u)[1]
    du = upoly.derivative(u)
    c = A[-1] / du[-1] if A else ZERO
    if upoly.sub(A, upoly.scale(du, c)):
        raise ExtensionRequired(upoly.format_upoly(u, "x"))
    return BivarPoly.from_x_upoly(u), c


def _inverse_mod(a, m):
    r0, r1 = upoly.strip(m), upoly.divmod_(a, m)[1]
    s0, s1 = (), (ONE,)
    while r1:
        q, r = upoly.divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, upoly.sub(s0, upoly.mul(q, s1))
    inv = r0[-1].inverse()
    return upoly.scale(r0, inv), upoly.scale(s0, inv)


def _series_quotient(ns, ds, m):
    inv = upoly.strip(ds)
    out = []
    d0 = inv[0].inverse()
    for k in range(m):
        acc = ns[k] if k < len(ns) else ZERO
        for j in range(1, k + 1):
            if j < len(inv):
                acc = acc - inv[j] * out[k - j]
        out.append(acc * d0)
    return out
