import pytest

from labelspace import fixtures
from labelspace.graph import parse_graph


@pytest.fixture(scope="session")
def A():
    return fixtures.load("A")


@pytest.fixture(scope="session")
def B():
    return fixtures.load("B")


@pytest.fixture(scope="session")
def C():
    return fixtures.load("C")


@pytest.fixture(scope="session")
def D():
    return fixtures.load("D")


@pytest.fixture(scope="session")
def alternating():
    """Two vertices joined by an a-edge and a b-edge into a cycle."""
    return parse_graph("edge x y a\nedge y x b\n")


def S(g, *ids):
    return g.mask(ids)


CRITERIA_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES):
            terminalreporter.write_line(line)
