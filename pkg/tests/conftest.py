import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log(capsys):
    """Record one PASS/FAIL line; it is echoed live and repeated in the summary."""

    def log(line):
        _ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print(f"\n{line}")

    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
