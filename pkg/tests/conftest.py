import numpy as np
import pytest
from hypothesis import settings

from lp_extremal import WeightedSpace

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def square():
    """Unit-square vertices in l_2^2."""
    return WeightedSpace(2.0, [1.0, 1.0]), np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])


@pytest.fixture
def unit_vectors():
    return WeightedSpace(2.0, [1.0, 1.0, 1.0]), np.eye(3)
