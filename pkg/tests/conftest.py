import pytest

from helpers import ACCEPTANCE_LINES
from parade_cover.geometry import Rect, World


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def box_world():
    """10x10 world with a single 2x2 obstacle at (2,2)-(4,4)."""
    return World(Rect.from_coords(0, 0, 10, 10), (Rect.from_coords(2, 2, 4, 4),))
