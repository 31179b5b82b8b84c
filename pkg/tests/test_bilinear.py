from darboux.bilinear import Solver
from darboux.field import GR, I

ONE = GR(1)


def key(s):
    return {frozenset(sol.items()) for sol in s}


def test_product_and_sum():
    # a*b = 0, a + b = 1
    eqs = [{(0, 1): ONE}, {(0,): ONE, (1,): ONE, (): -ONE}]
    assert key(Solver().solve(eqs)) == key([{0: GR(0), 1: ONE}, {0: ONE, 1: GR(0)}])


def test_gaussian_roots():
    eqs = [{(0, 0): ONE, (): ONE}]
    assert key(Solver().solve(eqs)) == key([{0: I}, {0: -I}])


def test_irrational_branch_is_pruned_with_notice():
    s = Solver()
    assert s.solve([{(0, 0): ONE, (): GR(-2)}]) == []
    assert any("pruned" in n for n in s.notices)


def test_inconsistent_linear_system():
    assert Solver().solve([{(0,): ONE, (): ONE}, {(0,): ONE}]) == []


def test_free_parameter_set_to_zero():
    s = Solver()
    sols = s.solve([{(0,): ONE, (1,): -ONE}])
    assert len(sols) == 1 and sols[0][0] == sols[0][1] == GR(0)
    assert any("free parameter" in n for n in s.notices)


def test_coupled_quadratics_need_groebner():
    # a^2 + b^2 = 5, a*b = 2, a + b + c = 0
    eqs = [
        {(0, 0): ONE, (1, 1): ONE, (): GR(-5)},
        {(0, 1): ONE, (): GR(-2)},
        {(0,): ONE, (1,): ONE, (2,): ONE},
    ]
    sols = Solver().solve(eqs)
    pairs = {(s[0], s[1]) for s in sols}
    assert pairs == {(GR(1), GR(2)), (GR(2), GR(1)), (GR(-1), GR(-2)), (GR(-2), GR(-1))}
    assert all(s[2] == -(s[0] + s[1]) for s in sols)
