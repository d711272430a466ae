from __future__ import annotations

import helpers


def pytest_terminal_summary(terminalreporter):
    # repeat the one-line criterion verdicts where they are visible without -s
    if helpers.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(helpers.VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
