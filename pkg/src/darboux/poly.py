"""Sparse bivariate polynomials over Q(i).

Monomials are pairs ``(i, j)`` meaning ``x^i * y^j``.  The fixed monomial
order is graded lexicographic with ``x < y``: compare total degree, then
the exponent of ``y``.
"""

from __future__ import annotations

from math import gcd as igcd

from . import upoly
from .errors import NotDivisible
from .field import GR, ONE, ZERO, as_gr, format_coefficient


def grlex_key(mono):
    i, j = mono
    return (i + j, j, i)


class BivarPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = as_gr(c)
                if c:
                    clean[mono] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors ------------------------------------------------------
    @classmethod
    def const(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BivarPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    @classmethod
    def from_x_upoly(cls, p) -> "BivarPoly":
        return cls._raw({(i, 0): c for i, c in enumerate(p) if c})

    @classmethod
    def from_y_coeffs(cls, coeffs) -> "BivarPoly":
        """Build ``sum_j coeffs[j](x) * y^j`` from univariate x-polynomials."""
        out = {}
        for j, p in enumerate(coeffs):
            for i, c in enumerate(p):
                if c:
                    out[(i, j)] = c
        return cls._raw(out)

    # basic queries -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def constant_value(self) -> GR:
        return self.terms.get((0, 0), ZERO)

    def coeff(self, i: int, j: int) -> GR:
        return self.terms.get((i, j), ZERO)

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def sorted_monomials(self):
        return sorted(self.terms, key=grlex_key, reverse=True)

    def leading_monomial(self):
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self) -> GR:
        return self.terms[self.leading_monomial()]

    def homogeneous_part(self, k: int) -> "BivarPoly":
        return BivarPoly._raw({m: c for m, c in self.terms.items() if m[0] + m[1] == k})

    def y_coeffs(self):
        """Coefficients in powers of y, as univariate x-polynomials."""
        dy = self.deg_y
        rows = [dict() for _ in range(dy + 1)]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        return [upoly.strip(r.get(i, ZERO) for i in range(max(r, default=-1) + 1)) for r in rows]

    def y_coeff(self, j: int) -> "BivarPoly":
        return BivarPoly._raw({(i, 0): c for (i, jj), c in self.terms.items() if jj == j})

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    # arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return BivarPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, BivarPoly):
            if not self.terms or not other.terms:
                return BivarPoly._raw({})
            out = {}
            for (i1, j1), c1 in self.terms.items():
                for (i2, j2), c2 in other.terms.items():
                    m = (i1 + i2, j1 + j2)
                    v = out.get(m)
                    out[m] = c1 * c2 if v is None else v + c1 * c2
            return BivarPoly._raw({m: c for m, c in out.items() if c})
        c = as_gr(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c) -> "BivarPoly":
        c = as_gr(c)
        if not c:
            return BivarPoly._raw({})
        return BivarPoly._raw({m: v * c for m, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, BivarPoly):
            return divide_exact(self, other)
        return self.scale(as_gr(other).inverse())

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = BivarPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, di: int, dj: int) -> "BivarPoly":
        return BivarPoly._raw({(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def diff(self, var: str) -> "BivarPoly":
        """Formal partial derivative with respect to ``'x'`` or ``'y'``."""
        out = {}
        if var == "x":
            for (i, j), c in self.terms.items():
                if i:
                    out[(i - 1, j)] = c * i
        elif var == "y":
            for (i, j), c in self.terms.items():
                if j:
                    out[(i, j - 1)] = c * j
        else:
            raise ValueError(f"unknown variable {var!r}")
        return BivarPoly._raw(out)

    def conjugate(self) -> "BivarPoly":
        return BivarPoly._raw({m: c.conjugate() for m, c in self.terms.items()})

    def evaluate(self, x, y):
        """Evaluate at numeric (float/complex) or exact points."""
        acc = 0
        for (i, j), c in self.terms.items():
            cv = complex(c) if isinstance(x, (float, complex)) or isinstance(y, (float, complex)) else c
            acc = acc + cv * x**i * y**j
        return acc

    def substitute_y(self, value: "BivarPoly") -> "BivarPoly":
        """Compose ``self(x, value(x, y))``."""
        result = BivarPoly._raw({})
        for j, cj in reversed(list(enumerate(self.y_coeffs()))):
            result = result * value + BivarPoly.from_x_upoly(cj)
        return result

    # normalisation -----------------------------------------------------
    def monic(self) -> "BivarPoly":
        if not self.terms:
            return self
        return self.scale(self.leading_coefficient().inverse())

    def canonical(self) -> "BivarPoly":
        """Associate with Gaussian-integer coefficients of content 1 and a
        positive integer leading coefficient."""
        if not self.terms:
            return self
        p = self.monic()
        den = 1
        for c in p.terms.values():
            d = c.denominator_lcm()
            den = den * d // igcd(den, d)
        p = p.scale(den)
        g = 0
        for c in p.terms.values():
            g = igcd(g, int(c.re.numerator))
            g = igcd(g, int(c.im.numerator))
        if g > 1:
            p = p.scale(GR(1) / g)
        return p

    # equality ----------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # text --------------------------------------------------------------
    def to_text(self, xname: str = "x", yname: str = "y") -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.sorted_monomials():
            c = self.terms[m]
            sign, mag = _split_sign(c)
            mono = _monomial_text(m, xname, yname)
            if not mono:
                body = mag
            elif mag == "1":
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if sign < 0 else body)
            else:
                parts.append(f"{'-' if sign < 0 else '+'} {body}")
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"BivarPoly({self.to_text()!r})"


def _coerce(value):
    if isinstance(value, BivarPoly):
        return value
    c = as_gr(value)
    if c is NotImplemented:
        return NotImplemented
    return BivarPoly.const(c)


def _split_sign(c: GR):
    if c.is_real():
        return (-1 if c.re < 0 else 1), format_coefficient(GR(abs(c.re)))
    if not c.re:
        sign = -1 if c.im < 0 else 1
        return sign, format_coefficient(GR(0, abs(c.im)))
    return 1, format_coefficient(c)


def _monomial_text(mono, xname, yname) -> str:
    i, j = mono
    out = []
    if i:
        out.append(xname if i == 1 else f"{xname}^{i}")
    if j:
        out.append(yname if j == 1 else f"{yname}^{j}")
    return "*".join(out)


X = BivarPoly.x()
Y = BivarPoly.y()


# --- division, gcd ----------------------------------------------------------


def divide_with_remainder(num: BivarPoly, den: BivarPoly):
    """Single-divisor multivariate division under grlex; returns (q, r)."""
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    lm = den.leading_monomial()
    lc_inv = den.terms[lm].inverse()
    dterms = list(den.terms.items())
    work = dict(num.terms)
    quot = {}
    rem = {}
    while work:
        m = max(work, key=grlex_key)
        c = work.pop(m)
        if m[0] >= lm[0] and m[1] >= lm[1]:
            qm = (m[0] - lm[0], m[1] - lm[1])
            qc = c * lc_inv
            quot[qm] = qc
            for dm, dc in dterms:
                if dm == lm:
                    continue
                t = (dm[0] + qm[0], dm[1] + qm[1])
                v = work.get(t, ZERO) - qc * dc
                if v:
                    work[t] = v
                else:
                    work.pop(t, None)
        else:
            rem[m] = c
    return BivarPoly._raw(quot), BivarPoly._raw(rem)


def divide_exact(num: BivarPoly, den: BivarPoly) -> BivarPoly:
    q, r = divide_with_remainder(num, den)
    if r:
        raise NotDivisible(r)
    return q


def divides(den: BivarPoly, num: BivarPoly) -> bool:
    return not divide_with_remainder(num, den)[1]


def _content_x(coeffs):
    g = ()
    for c in coeffs:
        if c:
            g = upoly.gcd(g, c) if g else upoly.monic(c)
            if len(g) == 1:
                break
    return g


def _primitive(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    cont = _content_x(coeffs)
    if len(cont) <= 1:
        return coeffs
    return [upoly.divmod_(c, cont)[0] for c in coeffs]


def _prem(a, b):
    """Pseudo-remainder of y-coefficient lists ``a`` by ``b``."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [upoly.mul(c, lb) for c in a]
        for k, c in enumerate(b):
            a[k + shift] = upoly.sub(a[k + shift], upoly.mul(la, c))
        while a and not a[-1]:
            a.pop()
    return a


def gcd_poly(a: BivarPoly, b: BivarPoly) -> BivarPoly:
    """Greatest common divisor, monic under grlex (1 for coprime inputs)."""
    if not a and not b:
        raise ValueError("gcd of two zero polynomials")
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    ca, cb = a.y_coeffs(), b.y_coeffs()
    cont = upoly.gcd(_content_x(ca), _content_x(cb))
    pa, pb = _primitive(ca), _primitive(cb)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while len(pb) > 1:
        r = _prem(pa, pb)
        pa, pb = pb, _primitive(r)
        if not pb:
            break
    if not pb:
        g = pa
    else:
        g = [(ONE,)]
    g_poly = BivarPoly.from_y_coeffs(g) if len(g) > 1 else BivarPoly.const(1)
    return (g_poly * BivarPoly.from_x_upoly(cont)).monic()


def lcm_poly(a: BivarPoly, b: BivarPoly) -> BivarPoly:
    return divide_exact(a * b, gcd_poly(a, b)).monic()


def squarefree_part(f: BivarPoly) -> BivarPoly:
    """Square-free part with respect to y (x-content kept square-free too)."""
    g = gcd_poly(f, f.diff("y"))
    return divide_exact(f, g)
