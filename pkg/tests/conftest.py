# tests/conftest.py

import pytest

from core.partitions import Multicharge
from core.segments import parse_multisegment
from models.hall_algebra import HallAlgebra


@pytest.fixture
def ms3():
    """Parser for multisegments at e = 3."""
    return lambda text: parse_multisegment(text, 3)


@pytest.fixture
def charge_e3_12():
    return Multicharge((1, 2), 3)


@pytest.fixture
def charge_e3_01():
    return Multicharge((0, 1), 3)


@pytest.fixture(scope="session")
def hall3():
    return HallAlgebra(3)


@pytest.fixture(scope="session")
def hall2():
    return HallAlgebra(2)
