import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from recess.bodies import VBody

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SQ2 = np.sqrt(2.0)


@pytest.fixture
def wedge():
    """{x <= 0, y >= 0}"""
    return VBody(2, [[0, 0]], [[-1, 0], [0, 1]])


@pytest.fixture
def upper_half_plane():
    return VBody(2, [[0, 0]], [[0, 1]], [[1, 0]])


@pytest.fixture
def unit_square():
    return VBody(2, [[0, 0], [1, 0], [0, 1], [1, 1]])


@pytest.fixture
def slab():
    """R x [0, 1]"""
    return VBody(2, [[0, 0], [0, 1]], None, [[1, 0]])


@pytest.fixture
def vee():
    """{y >= |x|}"""
    return VBody(2, [[0, 0]], [[1, 1], [-1, 1]])
