import math
from fractions import Fraction

import pytest

from darboux.errors import ExcludedRegion, SingularStart, StepUnderflow
from darboux.field import GR
from darboux.numeric import EvaluableInvariant, check_conserved, check_direct, integrate
from darboux.parser import parse_polynomial as pp
from darboux.search import DarbouxFunction
from darboux.system import PlanarSystem

F1, F2 = pp("y^3 - y - x"), pp("x*y^2 - x - 1")


def test_harmonic_closed_orbit(harmonic):
    orbit = integrate(harmonic, (1, 0), 2 * math.pi, 1e-3)
    _, x, y = orbit.end
    assert orbit.aborted is None
    assert math.hypot(x - 1, y) <= 1e-6


def test_harmonic_energy_conserved(harmonic):
    orbit = integrate(harmonic, (1, 0), 2 * math.pi, 1e-3)
    H = EvaluableInvariant(DarbouxFunction([(pp("x^2 + y^2"), GR(1))]))
    assert check_conserved(H, orbit) <= 1e-8


def test_fourth_order_convergence(harmonic):
    H = EvaluableInvariant(DarbouxFunction([(pp("x^2 + y^2"), GR(1))]))
    coarse = check_conserved(H, integrate(harmonic, (1, 0), 2 * math.pi, 0.1))
    fine = check_conserved(H, integrate(harmonic, (1, 0), 2 * math.pi, 0.05))
    assert coarse / fine > 12


def test_non_conserved_detector():
    orbit = integrate(PlanarSystem(pp("1"), pp("0")), (0, 0), 3, 1e-3)
    assert check_direct(DarbouxFunction([(pp("x"), GR(1))]), orbit) == pytest.approx(3.0)


def test_singular_start(harmonic):
    with pytest.raises(SingularStart):
        integrate(harmonic, (0, 0), 1, 0.1)


def test_step_underflow(harmonic):
    with pytest.raises(StepUnderflow):
        integrate(harmonic, (1, 0), 1, 1e-13)


def test_quintic_smoke(quintic):
    orbit = integrate(quintic, (0.1, 0.2), 1, 1e-3)
    assert orbit.aborted is None and orbit.end[0] == 1
    assert orbit.to_dict()["samples"] == 1001


def test_quintic_first_integral_conserved_at_high_precision(quintic):
    orbit = integrate(quintic, (0.1, 0.2), 1, 1e-3, precision=113)
    good = EvaluableInvariant(DarbouxFunction([(F1, GR(5)), (F2, GR(-3))]))
    bad = EvaluableInvariant(DarbouxFunction([(F1, GR(Fraction(5001, 1000))), (F2, GR(-3))]))
    g, b = check_conserved(good, orbit), check_conserved(bad, orbit)
    assert g <= 1e-6
    assert b > 100 * g


def test_excluded_region():
    H = EvaluableInvariant(DarbouxFunction([(pp("x"), GR(-1))]))
    with pytest.raises(ExcludedRegion):
        H.value(0.0, 1.0)


def test_complex_exponent_argument_is_unwrapped(harmonic):
    # on x = cos t, y = sin t: y + i x = i e^(-it), so log|(y + i x)^i| = t - pi/2
    fn = DarbouxFunction([(pp("y + i*x"), GR(0, 1))])
    orbit = integrate(harmonic, (1, 0), 7, 1e-2)
    assert check_conserved(EvaluableInvariant(fn), orbit) == pytest.approx(7 / (1 + math.pi / 2), rel=1e-6)
