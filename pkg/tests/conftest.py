import random
from fractions import Fraction

import pytest

from torusindex.crossed import rieffel_projection


@pytest.fixture
def rng():
    return random.Random(7)


@pytest.fixture(scope="session")
def rieffel():
    """(e, f, g) for alpha = 3/10, eps = 1/10 with the quintic ramp."""
    return rieffel_projection(Fraction(3, 10), Fraction(1, 10))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
