import random

import pytest

from tatechar.localring import LocalRing
from tatechar.curve import LocalCurve, p_torsion_level, torsion_basis


@pytest.fixture(scope="session")
def demo_m3():
    return LocalCurve(LocalRing.base(5, 3), 1, 1, seed=1)


@pytest.fixture(scope="session")
def demo_m2():
    return LocalCurve(LocalRing.base(5, 2), 1, 1, seed=1)


@pytest.fixture(scope="session")
def basis9(demo_m3):
    """Level-9 basis of the 3-part over GR(5^3, 6)."""
    return torsion_basis(demo_m3, 3, 2)


@pytest.fixture(scope="session")
def basis3(demo_m2):
    return torsion_basis(demo_m2, 3, 1)


@pytest.fixture(scope="session")
def ptors1_m2(demo_m2):
    return p_torsion_level(demo_m2, 1)


@pytest.fixture(scope="session")
def ptors1_m3(demo_m3):
    return p_torsion_level(demo_m3, 1)


@pytest.fixture(scope="session")
def ptors2_m3(demo_m3):
    return p_torsion_level(demo_m3, 2)


@pytest.fixture()
def rng():
    return random.Random(20240817)
