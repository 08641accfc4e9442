import sys

import pytest

from corpora import figure1


@pytest.fixture(scope="session")
def fig1():
    return figure1()


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines at the end of the run."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for num in sorted(lines):
            terminalreporter.write_line(lines[num])
