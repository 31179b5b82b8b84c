import pytest
from hypothesis import given

from darboux import upoly
from darboux.errors import ExtensionRequired
from darboux.field import GR, I, ONE

from helpers import gaussians


def test_factor_sum_of_squares():
    factors = upoly.factor_univariate([ONE, GR(0), ONE])
    assert {f for f, _ in factors} == {(I, ONE), (-I, ONE)}
    assert all(m == 1 for _, m in factors)


def test_factor_square():
    assert upoly.factor_univariate([ONE, GR(-2), ONE]) == [((GR(-1), ONE), 2)]


def test_irreducible_cubic_needs_extension():
    with pytest.raises(ExtensionRequired):
        upoly.factor_univariate([GR(-1), GR(-1), GR(0), ONE])


@given(gaussians, gaussians)
def test_quadratic_roots_roundtrip(a, b):
    p = upoly.from_roots([a, b])
    roots = [r for r, m in upoly.gaussian_roots(p) for _ in range(m)]
    key = GR.sort_key
    assert sorted([a, b], key=key) == sorted(roots, key=key)


@given(gaussians)
def test_sqrt_of_square(a):
    r = upoly.sqrt_gr(a * a)
    assert r is not None and r * r == a * a


def test_sqrt_not_in_field():
    assert upoly.sqrt_gr(GR(2)) is None
    assert upoly.sqrt_gr(GR(-3, 4)) == GR(1, 2)


def test_divmod_and_gcd():
    a = upoly.from_roots([GR(1), GR(2), I])
    b = upoly.from_roots([GR(2), GR(5)])
    q, r = upoly.divmod_(a, b)
    assert upoly.add(upoly.mul(q, b), r) == a
    assert upoly.monic(upoly.gcd(a, b)) == upoly.from_roots([GR(2)])
