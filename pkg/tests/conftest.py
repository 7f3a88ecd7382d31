import pytest

ACCEPTANCE_RECORDS: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion, then assert it."""

    def check(criterion: str, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}"
        print(line)
        ACCEPTANCE_RECORDS.append((criterion, bool(ok), detail))
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RECORDS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE_RECORDS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")
