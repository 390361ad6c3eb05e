from __future__ import annotations

import pytest


def braid_relations_hold(mats) -> bool:
    """Far commutativity and the braid relation for consecutive generators."""
    for i, a in enumerate(mats):
        for j in range(i + 1, len(mats)):
            b = mats[j]
            if j == i + 1:
                if not a @ b @ a == b @ a @ b:
                    return False
            elif not a @ b == b @ a:
                return False
    return True


@pytest.fixture
def braid_ok():
    return braid_relations_hold


# one line per acceptance criterion, echoed in the terminal summary so they
# appear even when stdout is captured
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
