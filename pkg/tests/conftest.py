import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_line():
    """Record 'criterion N: PASS|FAIL ...' lines; they are echoed in the terminal summary."""
    def record(number, ok, text):
        line = "criterion %2d: %s  %s" % (number, "PASS" if ok else "FAIL", text)
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
