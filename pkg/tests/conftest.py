import numpy as np
import pytest

from renyi_augustin.channels import bsc


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bsc01():
    return np.array([0.5, 0.5]), bsc(0.1)


@pytest.fixture
def two_by_two():
    return np.array([0.5, 0.5]), np.array([[0.8, 0.2], [0.3, 0.7]])


def binary_entropy(p):
    return -p * np.log(p) - (1 - p) * np.log(1 - p)


ACCEPTANCE_LINES = []


def record(criterion, passed, detail):
    """Register one acceptance line for the terminal summary."""
    line = "%s criterion %s: %s" % ("PASS" if passed else "FAIL", criterion, detail)
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
