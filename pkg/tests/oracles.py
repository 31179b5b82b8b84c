"""Independent oracles used by the property suites.

The curve oracle writes the full dense ansatz f (degree n, leading monomial
normalised to 1) and k (degree d-1), takes every coefficient of
X(f) - k f as an equation and solves the whole system at once: a grevlex
Groebner basis, conversion to lex, then back substitution keeping Gaussian
rational roots only.  It shares nothing with the staged package solver.
"""

from fractions import Fraction

import sympy as sp

from darboux.field import GR
from darboux.poly import BivarPoly, divides
from darboux.system import PlanarSystem

X, Y = sp.symbols("x y")


class Family(Exception):
    """The ansatz has a positive-dimensional solution set."""


def _q(v):
    return sp.Rational(int(v.numerator), int(v.denominator))


def to_sym(p):
    return sum((_q(c.re) + sp.I * _q(c.im)) * X**i * Y**j for (i, j), c in p.terms.items())


def to_gr(c):
    re, im = sp.re(c), sp.im(c)
    return GR(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def gaussian_roots(expr, v):
    _, facs = sp.factor_list(expr, v, gaussian=True)
    out = []
    for fac, _m in facs:
        p = sp.Poly(fac, v)
        if p.degree() == 1:
            a, b = p.all_coeffs()
            out.append(sp.simplify(-b / a))
    return out


def back_substitute(exprs, unknowns, partial):
    if not unknowns:
        return [partial] if all(sp.expand(e) == 0 for e in exprs) else []
    v = unknowns[-1]
    only = [e for e in exprs if e.free_symbols <= {v} and e != 0]
    if not only:
        raise Family(v)
    g = only[0]
    for e in only[1:]:
        g = sp.gcd(g, e)
    sols = []
    for r in gaussian_roots(g, v):
        sub = [sp.expand(e.subs(v, r)) for e in exprs]
        if any(e.is_number and e != 0 for e in sub):
            continue
        sols += back_substitute([e for e in sub if e != 0], unknowns[:-1], {**partial, v: r})
    return sols


def _grlex_desc(n):
    # x precedes y, so inside a degree y-heavy monomials come first
    return [(i, d - i) for d in range(n, -1, -1) for i in range(d + 1)]


def oracle_curves(sysm: PlanarSystem, N: int):
    """Canonical irreducible-over-found-lines invariant curves of degree <= N."""
    P, Q = to_sym(sysm.P), to_sym(sysm.Q)
    found = []
    for n in range(1, N + 1):
        monos = _grlex_desc(n)
        kmonos = [(i, e - i) for e in range(sysm.d) for i in range(e + 1)]
        for lead_idx, lead in enumerate(monos):
            if sum(lead) != n:
                break
            cs = sp.symbols(f"c0:{len(monos)}")
            ks = sp.symbols(f"k0:{len(kmonos)}")
            fix = {cs[t]: 0 for t in range(lead_idx)}
            fix[cs[lead_idx]] = 1
            f = sum(c * X**i * Y**j for c, (i, j) in zip(cs, monos)).subs(fix)
            k = sum(c * X**i * Y**j for c, (i, j) in zip(ks, kmonos))
            eqs = sp.Poly(sp.expand(sp.diff(f, X) * P + sp.diff(f, Y) * Q - k * f), X, Y).coeffs()
            unknowns = [c for c in cs if c not in fix] + list(ks)
            G = sp.groebner(eqs, *unknowns, order="grevlex")
            if list(G.exprs) == [1]:
                continue
            if not G.is_zero_dimensional:
                raise Family(n)
            G = G.fglm("lex")
            for s in back_substitute(list(G.exprs), unknowns, {}):
                fp = sp.Poly(sp.expand(f.subs(s)), X, Y)
                found.append(BivarPoly({m: to_gr(c) for m, c in fp.terms()}).canonical())
    out = []
    for f in sorted(set(found), key=lambda p: (p.degree, p.to_text())):
        if not any(divides(g, f) for g in out if g.degree < f.degree):
            out.append(f)
    return out


def _rp(rng, deg, density=0.5):
    return BivarPoly({
        (i, e - i): GR(rng.randint(-2, 2))
        for e in range(deg + 1) for i in range(e + 1) if rng.random() < density
    })


def quadratic_system(rng, plant_line: bool):
    """Random degree-2 system, optionally with a planted invariant line."""
    while True:
        P, Q = _rp(rng, 2), _rp(rng, 2)
        if plant_line:
            a, b, c = rng.randint(-2, 2), rng.choice([1, -1, 2]), rng.randint(-2, 2)
            line = BivarPoly({(1, 0): GR(a), (0, 1): GR(b), (0, 0): GR(c)})
            Q = (_rp(rng, 1) * line - P.scale(a)).scale(GR(1) / b)
        try:
            s = PlanarSystem(P, Q)
        except Exception:
            continue
        if s.d == 2:
            return s
