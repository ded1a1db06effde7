from fractions import Fraction

import pytest

from tourglue.cyclic import validate_cyclic
from tourglue import generators as gen

# acceptance lines collected during the run, printed in the terminal summary
ACCEPTANCE_LINES: dict = {}


def point(triple):
    th, G, x = triple
    return validate_cyclic(th, G, x)


@pytest.fixture
def k4h():
    return point(gen.k4half())


@pytest.fixture
def prism_half():
    return point(gen.prism(Fraction(1, 2)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
