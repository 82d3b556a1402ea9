import numpy as np
import pytest

from hs2sphere.funcspace import PeriodicGrid


@pytest.fixture
def grid():
    return PeriodicGrid(256)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
