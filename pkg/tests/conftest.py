import pytest

from paritykick import build_bath
from paritykick.harness import parse_config


@pytest.fixture(scope="session")
def bath():
    """Default 201-mode bath: omega0=1e7, gamma=1e5, delta=1e5 rad/s."""
    return build_bath()


@pytest.fixture(scope="session")
def small_bath():
    """11 modes spanning [0, 2 omega0]."""
    return build_bath(1e7, 1e5, 11, 2e6)


@pytest.fixture(scope="session")
def cfg():
    return parse_config({})


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion and assert it."""
    def record(number, ok, message):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {message}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
