import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

from weylelim.exactarith import ONE, X, Y  # noqa: E402
from weylelim.reduce import make_system  # noqa: E402
from weylelim.weyl import WeylOperator  # noqa: E402


@pytest.fixture
def geometric():
    L = ONE - X - Y
    return make_system(WeylOperator({(1, 0): L, (0, 0): -1}), WeylOperator({(0, 1): L, (0, 0): -1}))


@pytest.fixture
def exp_system():
    return make_system(WeylOperator({(1, 0): 1, (0, 0): -1}), WeylOperator({(0, 1): 1, (0, 0): -1}))


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE_LOG

    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LOG:
        terminalreporter.write_line(line)
