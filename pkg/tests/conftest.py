import random
from fractions import Fraction

import pytest

from poishom import catalog


@pytest.fixture
def rng():
    return random.Random(catalog.DEFAULT_SEED)


@pytest.fixture(scope="session")
def so3():
    return catalog.so3_algebra()


@pytest.fixture(scope="session")
def solvable3():
    return catalog.solvable3_algebra()


@pytest.fixture(scope="session")
def r2xr2():
    return catalog.r2xr2_algebra()


@pytest.fixture(scope="session")
def sl2_tri():
    return catalog.sl2_triangular_algebra()


def rational(rng, num=6, den=4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_vector(L, rng):
    return L.vector([rational(rng) for _ in range(L.dim)])


def random_covector(L, rng):
    return L.covector([rational(rng) for _ in range(L.dim)])
