"""Dense univariate polynomials over Q(i).

A polynomial is a tuple of coefficients, lowest degree first, with no
trailing zeros.  The zero polynomial is the empty tuple.
"""

from __future__ import annotations

import gmpy2
import sympy
from gmpy2 import mpq

from .errors import ExtensionRequired
from .field import GR, ONE, ZERO, as_gr

UPoly = tuple


def strip(coeffs) -> UPoly:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def degree(p: UPoly) -> int:
    return len(p) - 1


def add(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return strip((a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n))


def neg(a: UPoly) -> UPoly:
    return tuple(-c for c in a)


def sub(a: UPoly, b: UPoly) -> UPoly:
    return add(a, neg(b))


def scale(a: UPoly, c) -> UPoly:
    c = as_gr(c)
    if not c:
        return ()
    return tuple(x * c for x in a)


def mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return strip(out)


def divmod_(a: UPoly, b: UPoly):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    quot = [ZERO] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = rem[k + db] * inv
        if not c:
            continue
        quot[k] = c
        for j, y in enumerate(b):
            rem[k + j] = rem[k + j] - c * y
    return strip(quot), strip(rem[:db] if db > 0 else [])


def monic(a: UPoly) -> UPoly:
    if not a:
        return a
    return scale(a, a[-1].inverse())


def gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def derivative(a: UPoly) -> UPoly:
    return strip(a[i] * i for i in range(1, len(a)))


def evaluate(a: UPoly, z):
    acc = ZERO
    for c in reversed(a):
        acc = acc * z + c
    return acc


def from_roots(roots) -> UPoly:
    out: UPoly = (ONE,)
    for r in roots:
        out = mul(out, (-as_gr(r), ONE))
    return out


# --- factorisation over Q(i) ------------------------------------------------

_Z = sympy.Symbol("z")


def _to_sympy(c: GR):
    re = sympy.Rational(int(c.re.numerator), int(c.re.denominator))
    im = sympy.Rational(int(c.im.numerator), int(c.im.denominator))
    return re + sympy.I * im


def _from_sympy(v) -> GR:
    re, im = sympy.Rational(sympy.re(v)), sympy.Rational(sympy.im(v))
    return GR(sympy_frac(re), sympy_frac(im))


def sympy_frac(r):
    from fractions import Fraction

    return Fraction(int(r.p), int(r.q))


def to_sympy_poly(p: UPoly):
    return sympy.Poly([_to_sympy(c) for c in reversed(p)], _Z, domain="QQ_I")


def format_upoly(p: UPoly, var: str = "z") -> str:
    from .poly import BivarPoly

    return str(BivarPoly({(i, 0): c for i, c in enumerate(p) if c}).to_text(xname=var))


def irreducible_factors(p: UPoly):
    """Monic irreducible factors of ``p`` over Q(i) with multiplicities."""
    p = strip(p)
    if len(p) <= 1:
        return []
    _, factors = to_sympy_poly(p).factor_list()
    out = []
    for fac, mult in factors:
        coeffs = strip([_from_sympy(c) for c in reversed(fac.all_coeffs())])
        out.append((monic(coeffs), mult))
    out.sort(key=lambda fm: (len(fm[0]), [c.sort_key() for c in fm[0]]))
    return out


def _rational_sqrt(q):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if not (gmpy2.is_square(n) and gmpy2.is_square(d)):
        return None
    return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))


def sqrt_gr(c: GR):
    """A square root of ``c`` in Q(i), or None."""
    a, b = c.re, c.im
    r = _rational_sqrt(a * a + b * b)
    if r is None:
        return None
    u = _rational_sqrt((r + a) / 2)
    v = _rational_sqrt((r - a) / 2)
    if u is None or v is None:
        return None
    return GR(u, v if b >= 0 else -v)


def _quadratic_roots(p: UPoly):
    c, b, a = p
    disc = b * b - a * c * 4
    s = sqrt_gr(disc)
    if s is None:
        raise ExtensionRequired(format_upoly(monic(p)))
    r1, r2 = (-b + s) / (a * 2), (-b - s) / (a * 2)
    if r1 == r2:
        return [(r1, 2)]
    return sorted([(r1, 1), (r2, 1)], key=lambda rm: rm[0].sort_key())


def gaussian_roots(p: UPoly):
    """Roots of ``p`` in Q(i) with multiplicities, sorted canonically.

    Raises :class:`ExtensionRequired` naming the product of the
    irreducible factors that do not split over Q(i).
    """
    p = strip(p)
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if len(p) == 1:
        return []
    if len(p) == 2:
        return [(-p[0] / p[1], 1)]
    if len(p) == 3:
        return _quadratic_roots(p)
    _, factors = to_sympy_poly(p).factor_list()
    roots = []
    bad: UPoly = (ONE,)
    for fac, mult in factors:
        coeffs = [_from_sympy(c) for c in reversed(fac.all_coeffs())]
        if len(coeffs) == 2:
            roots.append((-coeffs[0] / coeffs[1], mult))
        else:
            for _ in range(mult):
                bad = mul(bad, monic(strip(coeffs)))
    if len(bad) > 1:
        raise ExtensionRequired(format_upoly(bad))
    roots.sort(key=lambda rm: rm[0].sort_key())
    return roots


def factor_univariate(p: UPoly):
    """Complete factorisation of ``p`` into monic linear factors over Q(i).

    Returns ``[(factor, multiplicity), ...]``; the leading coefficient is
    ``p[-1]``.
    """
    return [((-r, ONE), m) for r, m in gaussian_roots(p)]


def squarefree_part(p: UPoly) -> UPoly:
    g = gcd(p, derivative(p))
    return monic(divmod_(p, g)[0])
