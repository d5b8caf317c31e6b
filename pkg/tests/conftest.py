import pytest

from treeaug.fixtures import load

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fx():
    return load


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
