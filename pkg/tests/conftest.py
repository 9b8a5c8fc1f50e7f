from __future__ import annotations

import pytest

# -- acceptance summary --------------------------------------------------

ACCEPTANCE: dict[str, tuple[str, bool]] = {}


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for the acceptance summary."""
    key = request.node.name

    def record(label, ok):
        ACCEPTANCE[key] = (label, bool(ok))
        assert ok, label

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in ACCEPTANCE.values():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")

