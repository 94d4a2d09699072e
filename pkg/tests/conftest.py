"""Shared pytest wiring for the suite.

The acceptance tests register their one-line verdicts here; the
terminal-summary hook runs after capture is torn down, so the lines
appear in the report (and in any tee'd transcript) even though output
printed inside passing tests is swallowed by pytest's fd-level capture.
"""
from __future__ import annotations

verdict_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if verdict_lines:
        terminalreporter.section("acceptance criteria")
        for line in verdict_lines:
            terminalreporter.write_line(line)
