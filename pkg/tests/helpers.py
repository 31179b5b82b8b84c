"""Hypothesis strategies and random generators shared by the tests."""

from fractions import Fraction

from hypothesis import strategies as st

from darboux.field import GR
from darboux.poly import BivarPoly

small = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
gaussians = st.builds(GR, rationals, rationals)


@st.composite
def polys(draw, max_degree=3, max_terms=6):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(0, max_degree))
        j = draw(st.integers(0, max_degree - i))
        terms[(i, j)] = draw(gaussians)
    return BivarPoly(terms)


def random_poly(rng, degree, density=0.6, lo=-3, hi=3, complex_coeffs=False, constant=True):
    """Random poly with integer (or Gaussian integer) coefficients."""
    terms = {}
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            if (i, j) == (0, 0) and not constant:
                continue
            if rng.random() < density:
                im = rng.randint(lo, hi) if complex_coeffs else 0
                terms[(i, j)] = GR(rng.randint(lo, hi), im)
    return BivarPoly(terms)


def planted_system(rng, curves, max_degree=3, tries=200):
    """A system for which every polynomial in ``curves`` is invariant.

    With F the product of the curves, x' = a F - c F_y, y' = b F + c F_x
    gives X(f) divisible by f for every factor f of F.
    """
    from darboux.errors import CoprimalityViolation
    from darboux.system import PlanarSystem

    F = BivarPoly.const(1)
    for f in curves:
        F = F * f
    for _ in range(tries):
        cdeg = rng.randint(0, max(0, max_degree - F.degree + 1))
        c = random_poly(rng, cdeg)
        if not c:
            continue
        adeg = max_degree - F.degree
        a = random_poly(rng, adeg) if adeg >= 0 else BivarPoly()
        b = random_poly(rng, adeg) if adeg >= 0 else BivarPoly()
        P = a * F - c * F.diff("y")
        Q = b * F + c * F.diff("x")
        if max(P.degree, Q.degree) > max_degree or not P or not Q:
            continue
        try:
            return PlanarSystem(P, Q)
        except CoprimalityViolation:
            continue
    raise RuntimeError("could not plant the curves")


def random_line(rng, complex_coeffs=False):
    while True:
        f = random_poly(rng, 1, density=0.8, complex_coeffs=complex_coeffs)
        if f.degree == 1 and (f.canonical().is_real() != complex_coeffs):
            return f
