import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from koszulkit.arith import polynomial_ring
from koszulkit.quotient import make_ring


@pytest.fixture(scope="session")
def ci2():
    s, (x, y) = polynomial_ring(5, ("x", "y"))
    return make_ring(s, [x**2, y**2])


@pytest.fixture(scope="session")
def nk3():
    s, (x,) = polynomial_ring(5, ("x",))
    return make_ring(s, [x**3])


@pytest.fixture(scope="session")
def crv26():
    s, (x, y, z) = polynomial_ring(32003, ("x", "y", "z"))
    return make_ring(s, [x**2, x * y, y * z, z**2])


@pytest.fixture(scope="session")
def mm1():
    s, (x, y) = polynomial_ring(32003, ("x", "y"))
    return make_ring(s, [y**2])


@pytest.fixture(scope="session")
def fitz3():
    s, (x, y, z) = polynomial_ring(3, ("x", "y", "z"))
    return make_ring(s, [x**2, y**2, z**2, x * y])
