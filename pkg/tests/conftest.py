import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hailstone import build_memo  # noqa: E402


@pytest.fixture(scope="session")
def memo_small():
    return build_memo(10**5)


ACCEPTANCE_LINES = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::" in report.nodeid:
        name = report.nodeid.split("::", 1)[1]
        ACCEPTANCE_LINES.append(f"{'PASS' if report.passed else 'FAIL'}  {name}  ({report.duration:.2f} s)")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
