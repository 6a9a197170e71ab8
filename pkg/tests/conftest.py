import mpmath
import pytest

mpmath.mp.dps = 50


@pytest.fixture
def mp():
    return mpmath
