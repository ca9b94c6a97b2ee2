from fractions import Fraction

import pytest
from hypothesis import settings

from itinerary_lab.maps import MapSystem

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")


@pytest.fixture
def sym():
    """a = b = 3/5, rho = 1/2, exact arithmetic."""
    return MapSystem.affine("3/5", "3/5", "1/2", mode="rational")


@pytest.fixture
def sym_float():
    return MapSystem.affine(0.6, 0.6, 0.5)


@pytest.fixture
def lopsided():
    return MapSystem.affine("7/10", "11/20", "3/5", mode="rational")


@pytest.fixture
def wavy():
    return MapSystem.sine(0.6, 0.6, 0.5, 0.2)


def orbit(a, b, rho, x, n):
    """Hand-rolled exact orbit; independent of the package's branch code."""
    a, b, rho, x = map(Fraction, (a, b, rho, x))
    digits, points = [], []
    for _ in range(n):
        points.append(x)
        if x <= rho:
            digits.append("0")
            x = x / a
        else:
            digits.append("1")
            x = (x - (1 - b)) / b
    return "".join(digits), points


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
