from fractions import Fraction

import pytest
from hypothesis import given

from darboux.field import GR, I, ONE, ZERO, as_gr, format_coefficient
from darboux.parser import parse_polynomial

from helpers import gaussians


@given(gaussians, gaussians, gaussians)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(gaussians)
def test_inverse(a):
    if not a:
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == ONE
        assert a / a == ONE


@given(gaussians, gaussians)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).is_real()


@given(gaussians)
def test_format_roundtrip(c):
    p = parse_polynomial(format_coefficient(c))
    assert p.constant_value() == c


def test_i_squared():
    assert I * I == -ONE
    assert I ** 4 == ONE


def test_as_gr():
    assert as_gr(Fraction(1, 3)) == GR(1, 0) / 3
    with pytest.raises(TypeError):
        as_gr(1 + 2j)


def test_hash_consistent_with_eq():
    assert hash(GR(Fraction(2, 4))) == hash(GR(Fraction(1, 2)))
    assert len({GR(1), GR(1, 0), GR(0, 1)}) == 2


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = 2
