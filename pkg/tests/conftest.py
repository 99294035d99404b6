import logging
import random

import pytest

from cellposet.cwposet import taylor_cw
from cellposet.monoid import parse_ideal

log = logging.getLogger(__name__)


@pytest.fixture(scope="session", autouse=True)
def setup_logging():
    logging.basicConfig(level=logging.INFO)


@pytest.fixture
def rng():
    """A seeded random source so every run samples the same matrices"""
    return random.Random(1729)


@pytest.fixture(scope="session")
def koszul2():
    return parse_ideal("x, y", ["x", "y"])


@pytest.fixture(scope="session")
def koszul3():
    return parse_ideal("x, y, z", ["x", "y", "z"])


@pytest.fixture(scope="session")
def edges():
    """The edge ideal of a triangle, whose Taylor complex is not minimal"""
    return parse_ideal("x*y, y*z, x*z", ["x", "y", "z"])


@pytest.fixture(scope="session")
def scarf_ideal():
    return parse_ideal("x*y^2, y*z^2, z*w^2, w*x^2", ["x", "y", "z", "w"])


@pytest.fixture
def triangle(koszul3):
    """CW data of a filled triangle labeled by the Koszul ideal in three variables"""
    return taylor_cw(koszul3)
