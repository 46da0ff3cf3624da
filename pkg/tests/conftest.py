import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    """Store one acceptance verdict; the line is printed in the terminal summary."""

    def _record(criterion: int, passed: bool, detail: str):
        ACCEPTANCE[criterion] = (passed, detail)
        print(f"{'PASS' if passed else 'FAIL'} criterion {criterion}: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {k:2d}: {detail}")
