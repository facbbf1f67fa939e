import pytest

from supercasimir.materials import preset


@pytest.fixture
def au():
    return preset("au")


@pytest.fixture
def nb():
    return preset("nb")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
