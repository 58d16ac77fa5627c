from fractions import Fraction

import pytest

from machcover.core import sort_canonical

# (criterion number, line) pairs filled in by test_acceptance.py
ACCEPTANCE_LINES: list[tuple[int, str]] = []


def make(jobs, bids, ids=None):
    return sort_canonical([Fraction(j) for j in jobs], [Fraction(b) for b in bids], ids)


@pytest.fixture
def F():
    return Fraction


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
