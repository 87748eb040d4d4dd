from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# filled by tests/test_acceptance.py, printed once at the end of the session
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fixture_path():
    return FIXTURES / "ischemia_glutamate.txt"


@pytest.fixture
def snapshot_path():
    return FIXTURES / "ischemia_glutamate.expected.json"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
