import random
from pathlib import Path

import pytest

from darboux.parser import parse_polynomial as pp
from darboux.system import PlanarSystem

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def system(p, q):
    return PlanarSystem(pp(p), pp(q))


@pytest.fixture(scope="session")
def quintic():
    return system("-5-5*x+15*y^2-6*x^2*y+14*x*y^2-9*x*y^4", "5+2*x-3*y-2*x*y^2+6*y^3-3*y^5")


@pytest.fixture(scope="session")
def sqrtx():
    return system("(2*x+y)*(1+x)+2*x^2*y+y^3", "y*(1+x+x*y)")


@pytest.fixture(scope="session")
def rational_exp():
    return system("y+y^2+x^2+4*y*x^2", "-x-2*x^3+2*x*y^2")


@pytest.fixture(scope="session")
def harmonic():
    return system("-y", "x")


@pytest.fixture(scope="session")
def linear23():
    return system("2*x", "3*y")


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def rng():
    return random.Random(20261016)
