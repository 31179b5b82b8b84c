import pytest

from darboux.cofactors import (
    LinearEquation, QuasiCofactor, SigmaTable, cofactor_formula_I, cofactor_formula_II, curve_cofactor, invert_y,
    polydromy_consistency, quasipolynomial_cofactor, rational_solution_from_cofactor, sigma_tilde,
)
from darboux.errors import Inconsistent, NotInvariant, RSMismatch
from darboux.field import GR, I
from darboux.parser import parse_polynomial as pp
from darboux.puiseux import newton_puiseux
from darboux.rational import LogDerivativeSpec, RationalFunction
from darboux.series import PuiseuxSeries as S
from darboux.system import PlanarSystem

F1, F2 = pp("y^3 - y - x"), pp("x*y^2 - x - 1")
K1 = pp("-3*(1 + 2*x*y - 4*y^2 + 3*y^4)")


def test_quintic_cofactors(quintic):
    assert curve_cofactor(F1, quintic).k == K1
    assert curve_cofactor(F2, quintic).k == K1.scale(GR(5) / 3)


def test_simple_cofactor():
    assert curve_cofactor(pp("x"), PlanarSystem(pp("x"), pp("-y"))).k == pp("1")


def test_not_invariant(quintic):
    with pytest.raises(NotInvariant):
        curve_cofactor(pp("x + y"), quintic)


def test_product_rule(quintic):
    k = curve_cofactor(F1 * F2, quintic).k
    assert k == curve_cofactor(F1, quintic).k + curve_cofactor(F2, quintic).k


def test_quasicofactor_of_straight_line(sqrtx):
    M = quasipolynomial_cofactor(S.zero(), sqrtx)
    assert M.to_poly() == pp("1 + x + x*y")


def test_linear23_case(linear23):
    g = S({3: 1}, 2)
    M = quasipolynomial_cofactor(g, linear23)
    assert M.to_poly() == pp("3") and M.polydromy() == 1
    v = polydromy_consistency(g, M, linear23)
    assert (v.ok, v.nu_g, v.nu_M, v.label) == (True, 2, 1, "linear exemption")
    sol = rational_solution_from_cofactor(pp("3"), linear23)
    assert isinstance(sol, LinearEquation)
    assert sol.m1 == RationalFunction(pp("3"), pp("2*x")) and not sol.m0


def test_polydromy_kept_for_f2_roots(quintic):
    for g in newton_puiseux(F2, 24):
        M = quasipolynomial_cofactor(g, quintic)
        assert polydromy_consistency(g, M, quintic).nu_M == 2


def test_rational_solution_recovered():
    sys = PlanarSystem(pp("1 + y"), pp("2*x*(1 + y) + (y - x^2)*(x + y^2)"))
    M = quasipolynomial_cofactor(S({2: 1}), sys)
    assert M.to_poly() == pp("y^2 + x")
    assert rational_solution_from_cofactor(M.to_poly(), sys) == RationalFunction(pp("x^2"))


def test_zero_cofactor_on_nonlinear_system(quintic):
    with pytest.raises(Inconsistent):
        rational_solution_from_cofactor(pp("0"), quintic)


def test_sum_decomposition(quintic):
    # f2 = x (y - g1)(y - g2): k = h'P/h + M(g1) + M(g2) with h = x
    m0 = QuasiCofactor([S.from_upoly(c) * S({-1: 1}) for c in quintic.p][: quintic.m])
    total = m0
    for g in newton_puiseux(F2):
        total = total + quasipolynomial_cofactor(g, quintic)
    k = curve_cofactor(F2, quintic).k
    assert total.equal_to_truncation(QuasiCofactor([S.from_upoly(c) for c in k.y_coeffs()]))
    table = SigmaTable([1, 1], newton_puiseux(F2), h=LogDerivativeSpec.from_closed_form([(pp("x"), 1)]))
    assert cofactor_formula_I(table, quintic).cofactor.to_poly() == k


def test_formula_I_on_quintic(quintic):
    b1, b2 = 2, -1
    table = SigmaTable(
        [b1] * 3 + [b2] * 2, newton_puiseux(F1) + newton_puiseux(F2),
        h=LogDerivativeSpec.from_closed_form([(pp("x"), b2)]),
    )
    k = cofactor_formula_I(table, quintic).cofactor.to_poly()
    assert k == K1.scale(-(3 * b1 + 5 * b2)).scale(GR(-1) / 3)


def test_formula_I_trivial(quintic):
    table = SigmaTable([0, 0], newton_puiseux(F2), h=LogDerivativeSpec.one())
    assert cofactor_formula_I(table, quintic).cofactor.to_poly().is_zero()


def _inverted_table():
    return SigmaTable(
        [], [], h=LogDerivativeSpec.one(), h2=RationalFunction(pp("-1"), pp("x^2")),
        a_roots=[S.zero(), S.const(2)], gt_roots=[S({-1: -I}), S({-1: I})],
    )


def test_invert_y(rational_exp):
    inv = invert_y(rational_exp)
    assert inv.e == 2
    assert inv.system.P == pp("1 + (1 + 4*x^2)*y + x^2*y^2")
    assert inv.system.Q == pp("-2*x*y^2 + (x + 2*x^3)*y^4")
    assert invert_y(inv.system).system == rational_exp


def test_invert_y_trivial():
    inv = invert_y(PlanarSystem(pp("1"), pp("0")))
    assert inv.e == 0 and inv.system.P == pp("1") and inv.system.Q.is_zero()


def test_sigma_tilde_values():
    table = _inverted_table()
    expected = [S.zero(), S({-2: -2}), S({-4: -2}), S({-4: 6}), S({-6: 4})]
    assert [sigma_tilde(k, table) for k in range(5)] == expected


def test_sigma_tilde_single_pair():
    a, g, alpha = S({1: 3}), S({2: 1}), GR(5)
    h2 = RationalFunction(pp("x"))
    table = SigmaTable([alpha], [g], h2=h2, a_roots=[a], gt_roots=[g])
    assert sigma_tilde(0, table) == S.const(alpha)
    # J_1 = {(1; 0), (0; 1)}: +a for the epsilon slot, -g for the power slot
    want = g.scale(alpha) + S({1: 1}) * (a - g)
    assert sigma_tilde(1, table).equal_to_truncation(want)


def test_formula_II(rational_exp):
    res = cofactor_formula_II(_inverted_table(), invert_y(rational_exp).system)
    ks = [res.cofactor.coeffs[j] for j in range(4)]
    assert ks[2] == S({1: -4})
    assert all(ks[j].is_zero() for j in (0, 1, 3))
    assert res.cofactor.to_poly() == pp("-4*x*y^2")


def test_rs_mismatch():
    table = SigmaTable([], [], h2=RationalFunction(pp("1")), a_roots=[S.zero()], gt_roots=[])
    with pytest.raises(RSMismatch):
        sigma_tilde(1, table)
