from fractions import Fraction

import pytest

from weierfm import Polarization, get_preset


@pytest.fixture(scope="session")
def k3():
    return get_preset("k3_quartic")


@pytest.fixture(scope="session")
def enriques():
    return get_preset("enriques")


@pytest.fixture(scope="session")
def demo():
    """P¹×P¹ base: rank-2 lattice, nonzero canonical class."""
    return get_preset("general_demo")


@pytest.fixture(scope="session")
def k3_pol(k3):
    return Polarization(k3.model, Fraction(1), Fraction(1), k3.ample)


@pytest.fixture(scope="session")
def enriques_pol(enriques):
    return Polarization(enriques.model, Fraction(1), Fraction(1), enriques.ample)
