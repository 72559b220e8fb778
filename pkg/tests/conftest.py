"""
Shared fixtures: small indexed groups and the two F2[S4] ideals
"""
import numpy as np
import pytest

from app.algebra.findex import index_group
from app.algebra.galg import basis_element, from_permutations
from app.algebra.ideal import close
from app.algebra.perm import (
    alternating_group,
    parse_cycles,
    standard_generators,
    symmetric_group,
)
from app.utils.config import settings


@pytest.fixture
def rng():
    return np.random.default_rng(settings.RANDOM_SEED)


@pytest.fixture(scope="session")
def s3():
    return index_group(symmetric_group(3))


@pytest.fixture(scope="session")
def s4():
    return index_group(symmetric_group(4))


@pytest.fixture(scope="session")
def a4():
    return index_group(alternating_group(4))


@pytest.fixture(scope="session")
def s5():
    return index_group(symmetric_group(5))


def s4_ideal(G, sigma: str):
    """(e + (2,4) + (1,2)(3,4) + sigma, sum of the stabilizer of 4) in F2[S4]"""
    def p(text):
        return parse_cycles(text, 4)

    x = from_permutations(G, [p("e"), p("(2,4)"), p("(1,2)(3,4)")]) + basis_element(G, p(sigma))
    h1 = from_permutations(G, [q for q in symmetric_group(4) if q(3) == 3])
    return close(G, standard_generators("S", 4), [x, h1])


@pytest.fixture(scope="session")
def j1(s4):
    return s4_ideal(s4, "(1,2,3,4)")


@pytest.fixture(scope="session")
def j2(s4):
    return s4_ideal(s4, "(1,4,3,2)")
