import pytest
from hypothesis import given, settings, strategies as st

from darboux.errors import ExtensionRequired
from darboux.field import GR, ZERO
from darboux.linalg import nullspace, rref, solve_affine
from darboux.parser import parse_polynomial as pp
from darboux.rational import LogDerivativeSpec, RationalFunction as RF, integrate_log_derivative

from helpers import rationals


def test_rational_function_reduces():
    assert RF(pp("x^2 - 1"), pp("x - 1")) == RF(pp("x + 1"))
    assert RF(pp("1"), pp("x")).to_series(5).coefficient(-1) == GR(1)


def test_integrate_simple_pole():
    spec = integrate_log_derivative(RF(pp("3"), pp("x")))
    assert spec.closed_form == [(pp("x"), GR(3))] and spec.exp_part is None


def test_integrate_double_pole_gives_exponential():
    spec = integrate_log_derivative(RF(pp("1"), pp("x^2")))
    assert spec.closed_form == []
    assert spec.exp_part == RF(pp("-1"), pp("x"))


def test_integrate_gaussian_poles():
    spec = integrate_log_derivative(RF(pp("2*x"), pp("x^2 + 1")))
    assert sorted(u.to_text() for u, _ in spec.closed_form) == ["x + i", "x - i"]


def test_integrate_needs_extension():
    with pytest.raises(ExtensionRequired):
        integrate_log_derivative(RF(pp("1"), pp("x^2 - 2")))


def test_log_derivative_spec_checks_closed_form():
    spec = LogDerivativeSpec.from_closed_form([(pp("x"), -1)])
    assert spec.logderiv == RF(pp("-1"), pp("x"))
    with pytest.raises(ValueError):
        LogDerivativeSpec(RF(pp("y"), pp("1")))


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=4))
@settings(max_examples=50, deadline=None)
def test_nullspace_vectors_annihilate(raw):
    rows = [{k: GR(v) for k, v in enumerate(r) if v} for r in raw]
    kernel = nullspace(rows, 4)
    rank = len(rref(rows, 4)[1])
    for vec in kernel:
        for row in rows:
            assert sum((c * vec.get(k, ZERO) for k, c in row.items()), ZERO) == ZERO
    assert rank + len(kernel) == 4


def test_solve_affine():
    sol, free = solve_affine([{0: GR(1), 1: GR(1)}, {0: GR(1)}], [GR(3), GR(1)], 2)
    assert sol == {0: GR(1), 1: GR(2)} and free == []
