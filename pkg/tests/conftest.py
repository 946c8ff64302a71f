import pytest

_LINES: list[str] = []
_NOTES: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for the terminal summary, then assert."""

    def record(label: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        _LINES.append(line)
        print(line)
        assert ok, line

    return record


@pytest.fixture
def note():
    return _NOTES.append


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
    if _NOTES:
        terminalreporter.section("prep threshold, computed vs published (informational)")
        for line in _NOTES:
            terminalreporter.write_line(line)
