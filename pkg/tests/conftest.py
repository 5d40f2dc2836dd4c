import math

import pytest

from zeta_idd import arith
from zeta_idd.zeros_io import bundled_table

DIRICHLET_LIMIT = 10**8


@pytest.fixture(scope="session")
def zeros1000():
    return bundled_table(1000)


@pytest.fixture(scope="session")
def zeros100():
    return bundled_table(100)


@pytest.fixture(scope="session")
def vm15():
    """Prime powers up to e^15: enough for the explicit route on [0, 15]."""
    return arith.table_for_t(15.0)


@pytest.fixture(scope="session")
def vm_big():
    """Prime powers up to 1e8 for the Dirichlet series of xi'/xi."""
    return arith.cached_table(DIRICHLET_LIMIT)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
