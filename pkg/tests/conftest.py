"""Shared fixtures: the acceptance report collector.

Acceptance tests record one human-readable PASS/FAIL line each; the lines
are echoed in a dedicated section of the terminal summary so they survive
pytest's output capture.
"""

import pytest

_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    def record(line: str) -> None:
        _LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
