"""Shared fixtures.  The acceptance suite records one pass/fail line per
criterion; the terminal-summary hook reprints them after the run so the
verdicts are visible without -s."""

import pytest


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def acceptance(request):
    """Record and print a criterion verdict, then enforce it."""

    def record(criterion: int, passed: bool, detail: str) -> None:
        line = f"[criterion {criterion}] {'PASS' if passed else 'FAIL'}: {detail}"
        request.config._acceptance_lines.append(line)
        print(line)
        assert passed, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
