import pytest

_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion; printed in the terminal summary."""

    def record(label: str, ok: bool, detail: str, seconds: float):
        _LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail} ({seconds:.2f} s)")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
