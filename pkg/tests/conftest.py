import random

import pytest

from commontorsion.projection import Mobius, StandardProjection
from commontorsion.weierstrass import WeierstrassCurve


def short(a, b):
    return WeierstrassCurve.short(a, b)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def demo_pair():
    """y^2 = x^3 - x and y^2 = x^3 - 4x with plain x-projections."""
    return (StandardProjection.from_curve(short(-1, 0), label="E1"),
            StandardProjection.from_curve(short(-4, 0), label="E2"))


@pytest.fixture
def twisted_pair():
    """Same curves, second projection moved by (2X + 3Z : X - 5Z)."""
    return (StandardProjection.from_curve(short(-1, 0), label="E1"),
            StandardProjection.from_curve(short(-4, 0), Mobius(2, 3, 1, -5), label="T"))


@pytest.fixture
def mixed_pair():
    """Multiplicative at 11 (Tate valuation 11) with a good ordinary partner."""
    e3 = WeierstrassCurve(1, 0, 0, 0, 11 ** 11)
    partner = short(1, 1)
    return (StandardProjection.from_curve(e3, label="E3"),
            StandardProjection.from_curve(partner, Mobius(1, 1, 1, 2), label="F"))


@pytest.fixture
def supersingular_pair():
    """y^2 = x^3 + 1 and a twisted y^2 = x^3 + 2: both supersingular at 5."""
    return (StandardProjection.from_curve(short(0, 1), label="S1"),
            StandardProjection.from_curve(short(0, 2), Mobius(2, 3, 1, -5), label="S2"))
