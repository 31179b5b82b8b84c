from fractions import Fraction

from darboux.field import GR
from darboux.parser import parse_polynomial as pp
from darboux.puiseux import newton_puiseux
from darboux.series import PuiseuxSeries as S, polydromy


def test_power_rule_half_integer():
    assert S({3: 1}, 2).derivative() == S({1: GR(3, 0) / 2}, 2)


def test_geometric_reciprocal():
    r = S({0: 1, 1: 1}).reciprocal(10)
    assert all(r.coefficient(k) == GR((-1) ** k) for k in range(10))
    prod = (S({0: 1, 1: 1}) * r)
    assert prod.equal_to_truncation(S.const(1))


def test_square_of_root_of_f2():
    g = newton_puiseux(pp("x*y^2 - x - 1"), 24)[1]
    assert g.coefficient(-1, 2) == GR(1)
    assert (g * g).equal_to_truncation(S({-1: 1, 0: 1}))


def test_polydromy():
    assert polydromy(S({3: 1}, 2)) == 2
    assert polydromy(S({1: 1}, 2)) == 2
    assert polydromy(S({0: 1, 2: 3})) == 1
    # a representation with a redundant denominator reduces
    assert polydromy(S({2: 1, 4: 1}, 2)) == 1


def test_truncation_tracking():
    a = S({0: 1, 1: 1}, 1, trunc=5)
    b = S({0: 1}, 1, trunc=3)
    assert (a + b).exponent_bound() == 3
    assert (a * b).exponent_bound() == 3
    assert a.truncate(Fraction(2)).exponent_bound() == 2


def test_conjugate():
    a = S({-1: GR(0, 1)})
    assert (a * a.conjugate()) == S({-2: 1})
