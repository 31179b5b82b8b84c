import pytest

from darboux.cofactors import curve_cofactor
from darboux.errors import NotInvariant, PreconditionFailed
from darboux.field import GR, I
from darboux.parser import parse_polynomial as pp
from darboux.search import (
    DarbouxFunction, find_exponential_factors, find_first_integral, find_inverse_integrating_factor,
    find_invariant_curves, realify,
)
from darboux.system import PlanarSystem

F1, F2 = pp("y^3 - y - x"), pp("x*y^2 - x - 1")


def texts(curves):
    return sorted(c.f.to_text() for c in curves)


def test_quintic_degree_three(quintic):
    notes = []
    curves = find_invariant_curves(quintic, 3, notes)
    assert texts(curves) == sorted([F1.to_text(), F2.to_text()])
    for c in curves:
        assert curve_cofactor(c.f, quintic).k == c.k


def test_sqrtx_line(sqrtx):
    curves = find_invariant_curves(sqrtx, 1)
    assert texts(curves) == ["y"]
    assert curves[0].k == pp("1 + x + x*y")


def test_linear_node():
    curves = find_invariant_curves(PlanarSystem(pp("x"), pp("y")), 2)
    assert texts(curves) == ["x", "y"]
    k = curve_cofactor(pp("x*y"), PlanarSystem(pp("x"), pp("y"))).k
    assert k == curves[0].k + curves[1].k


def test_harmonic_complex_lines(harmonic):
    assert texts(find_invariant_curves(harmonic, 2)) == ["y + i*x", "y - i*x"]


def test_search_is_sound(rational_exp):
    for c in find_invariant_curves(rational_exp, 2):
        assert curve_cofactor(c.f, rational_exp).k == c.k
        assert c.f == c.f.canonical()


def test_exponential_factor_sqrtx(sqrtx):
    (e,) = find_exponential_factors(sqrtx, pp("y^2"), 2)
    assert (e.h, e.cofactor) == (pp("x + y"), pp("y - x"))
    assert e.verify(sqrtx)


def test_exponential_factor_rational_exp(rational_exp):
    (e,) = find_exponential_factors(rational_exp, pp("x^2 + y^2"), 1)
    assert (e.h, e.cofactor) == (pp("2*y - 1"), pp("-4*x"))


def test_exponential_factor_constant_denominator():
    sys = PlanarSystem(pp("1"), pp("x"))
    found = find_exponential_factors(sys, pp("1"), 2)
    assert [(e.h.to_text(), e.cofactor.to_text()) for e in found] == [("x", "1"), ("x^2 - 2*y", "0")]
    assert all(e.verify(sys) for e in found)


def test_exponential_factor_needs_invariant_denominator(sqrtx):
    with pytest.raises(NotInvariant):
        find_exponential_factors(sqrtx, pp("x + 7"), 1)


def test_quintic_first_integral(quintic):
    members = [curve_cofactor(F1, quintic), curve_cofactor(F2, quintic)]
    (H,) = find_first_integral(quintic, members)
    lam = dict((f.to_text(), l) for f, l in H.factors)
    assert GR(3) * lam[F1.to_text()] + GR(5) * lam[F2.to_text()] == GR(0)
    assert H.cofactor.is_zero() and H.verify(quintic)
    assert "darboux-first-integral" in H.labels()


def test_scalar_invariance(quintic):
    members = [curve_cofactor(F1.scale(GR(-7, 2)), quintic), curve_cofactor(F2.scale(GR(3)), quintic)]
    (H,) = find_first_integral(quintic, members)
    a, b = (l for _, l in H.factors)
    assert a / b == GR(-5) / 3


def test_single_member_nonzero_cofactor(quintic):
    assert find_first_integral(quintic, [curve_cofactor(F1, quintic)]) == []
    with pytest.raises(PreconditionFailed):
        find_first_integral(quintic, [])


def test_dependent_members(quintic):
    # f and f^2 have proportional cofactors, so a first integral f^2/f^... exists
    (H,) = find_first_integral(quintic, [curve_cofactor(F1, quintic), curve_cofactor(F1 ** 2, quintic)])
    a, b = (l for _, l in H.factors)
    assert a == -2 * b


def test_harmonic_inverse_integrating_factor(harmonic):
    sols = find_inverse_integrating_factor(harmonic, [curve_cofactor(pp("x^2 + y^2"), harmonic)])
    assert all(s.verify(harmonic) for s in sols)
    assert {s.to_text() for s in sols} == {"1", "(y^2 + x^2)"}
    (fi,) = find_first_integral(harmonic, [curve_cofactor(pp("x^2 + y^2"), harmonic)])
    assert fi.to_text() == "(y^2 + x^2)"


def test_constant_inverse_integrating_factor(harmonic):
    (V,) = find_inverse_integrating_factor(harmonic, [])
    assert V.to_text() == "1" and V.rational


def test_quintic_inverse_integrating_factors_verify(quintic):
    members = [curve_cofactor(F1, quintic), curve_cofactor(F2, quintic)]
    sols = find_inverse_integrating_factor(quintic, members)
    assert sols and all(s.verify(quintic) for s in sols)


def test_realify(rational_exp):
    inv = PlanarSystem(pp("1 + (1 + 4*x^2)*y + x^2*y^2"), pp("-2*x*y^2 + (x + 2*x^3)*y^4"))
    f = pp("x*y") - pp("1").scale(I)
    r = realify(f)
    assert r == pp("x^2*y^2 + 1")
    assert curve_cofactor(r, inv).k.is_real()
    assert realify(pp("y - i*x")) == pp("x^2 + y^2")
    assert realify(F1) == F1 ** 2


def test_darboux_function_verify_detects_wrong_cofactor(quintic):
    bad = DarbouxFunction([(F1, GR(5)), (F2, GR(-3))], [], "FirstIntegral", pp("1"))
    assert not bad.verify(quintic)
