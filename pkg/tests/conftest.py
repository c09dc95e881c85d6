import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from toricvol import build_germ, orthant

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# rays of the cone over the blowup of P^2 at a point, all at height 1
BLOWUP_RAYS = [(1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1)]
P2_RAYS = [(1, 0, 1), (0, 1, 1), (-1, -1, 1)]
CONIFOLD_RAYS = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def blowup():
    return build_germ(BLOWUP_RAYS, name="blowup")


@pytest.fixture(scope="session")
def cone_p2():
    return build_germ(P2_RAYS, name="cone over P2")


@pytest.fixture(scope="session")
def conifold():
    return build_germ(CONIFOLD_RAYS, name="conifold")


@pytest.fixture(scope="session")
def a2():
    return orthant(2)


@pytest.fixture(scope="session")
def a3():
    return orthant(3)


@pytest.fixture
def rng():
    return random.Random(20240607)


def random_interior_u(germ, rng, spread=5):
    """Rational positive combination of the rays of sigma."""
    rays = germ.sigma.rays
    wts = [Fraction(rng.randint(1, spread)) for _ in rays]
    return tuple(sum((c * r[k] for c, r in zip(wts, rays)), Fraction(0)) for k in range(germ.rank))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
