import pytest

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line, then assert it."""
    def check(label, ok, detail=""):
        _CRITERIA.append((label, bool(ok), detail))
        assert ok, f"{label}: {detail}"
    return check


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for label, ok, detail in _CRITERIA:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}" + (f" -- {detail}" if detail else ""))
