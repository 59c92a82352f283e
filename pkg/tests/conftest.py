import cmath
import math

import pytest

from modules.logger import Logger
from utils.sampling import make_rng
from utils.types import AlphaVector, JunctionGeometry, QuaternionDecomposition

SQRT2 = math.sqrt(2.0)
ETA = cmath.exp(1j * math.pi / 4)


@pytest.fixture(autouse=True)
def reset_logger():
    """Every test starts and ends with an unconfigured Logger."""
    Logger._logger = None
    Logger._log_file = None
    yield
    Logger._logger = None
    Logger._log_file = None


@pytest.fixture
def rng():
    return make_rng(1234)


@pytest.fixture
def free_geom():
    return JunctionGeometry(0.0)


@pytest.fixture
def identity_alpha():
    return AlphaVector(1 + 0j, 0j, 0j, 1 + 0j)


@pytest.fixture
def identity_triple():
    """The decomposition whose alpha vector is (1, 0, 0, 1) at lam = 0."""
    return QuaternionDecomposition(1 / SQRT2, -1j / SQRT2, -ETA.conjugate())


@pytest.fixture
def swap_triple():
    """(0, 1, 1): alpha = (i, -i sqrt2, 0, i) at lam = 0."""
    return QuaternionDecomposition(0j, 1 + 0j, 1 + 0j)
