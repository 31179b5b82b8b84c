import pytest

from darboux.errors import AmbiguousKernel, NotFound
from darboux.field import GR
from darboux.parser import parse_polynomial as pp
from darboux.puiseux import (
    is_particular_solution, linear_factor_product, minimal_polynomial, newton_puiseux,
    series_substitute,
)
from darboux.series import PuiseuxSeries as S, polydromy
from darboux.system import PlanarSystem


def test_roots_of_f1():
    f1 = pp("y^3 - y - x")
    roots = newton_puiseux(f1, 24)
    assert len(roots) == 3
    assert {r.coefficient(0) for r in roots} == {GR(-1), GR(0), GR(1)}
    for r in roots:
        assert series_substitute(f1, r).is_zero()
        assert r.exponent_bound() == 24
    small = [r for r in roots if not r.coefficient(0)][0]
    assert small.coefficient(1) == GR(-1) and small.coefficient(3) == GR(-1)
    for r in roots:
        if r.coefficient(0):
            assert r.coefficient(1) == GR(1) / 2


def test_roots_of_f2_have_polydromy_two():
    roots = newton_puiseux(pp("x*y^2 - x - 1"), 24)
    assert len(roots) == 2
    assert all(polydromy(r) == 2 for r in roots)
    assert {r.coefficient(-1, 2) for r in roots} == {GR(1), GR(-1)}


def test_double_root_reported_twice():
    assert newton_puiseux(pp("(y - x)^2"), 24) == [S({1: 1}), S({1: 1})]


def test_substitution():
    assert series_substitute(pp("y^2 - x"), S({1: 1}, 2)).is_zero()
    assert series_substitute(pp("y^2 - x"), S({1: 1})) == S({1: -1, 2: 1})


def test_particular_solutions(quintic, linear23):
    assert is_particular_solution(S({3: 1}, 2), linear23).ok
    for r in newton_puiseux(pp("y^3 - y - x")):
        assert is_particular_solution(r, quintic).ok
    v = is_particular_solution(S({1: 1}), PlanarSystem(pp("1"), pp("2")))
    assert not v.ok and v.residual == S.const(-1)


def test_minimal_polynomial_roundtrip():
    f1 = pp("y^3 - y - x")
    for r in newton_puiseux(f1, 24):
        assert minimal_polynomial(r, 4, 4).canonical() == f1.canonical()
    assert minimal_polynomial(S({3: 1}, 2), 4, 4).canonical() == pp("y^2 - x^3").canonical()


def test_minimal_polynomial_of_gaussian_roots():
    for c in (GR(0, 1), GR(0, -1)):
        g = S({-1: c})
        m = minimal_polynomial(g, 2, 2)
        assert m.deg_y == 1 and series_substitute(m, g).is_zero()
        assert m.canonical() == (pp("x*y") - pp("1").scale(c)).canonical()
    # the conjugate pair together: (y - i/x)(y + i/x) = y^2 + 1/x^2
    pair = linear_factor_product([S({-1: GR(0, 1)}), S({-1: GR(0, -1)})])
    assert pair.coeff(0) == S({-2: 1}) and pair.coeff(1).is_zero() and pair.coeff(2) == S.const(1)


def test_minimal_polynomial_not_found():
    g = newton_puiseux(pp("y^3 - y - x"), 24)[0]
    with pytest.raises((NotFound, AmbiguousKernel)):
        minimal_polynomial(g, 1, 2)
