import pytest

_CRITERIA: list[tuple[int, str]] = []


def _record(number: int, title: str, passed: bool, detail: str = "") -> None:
    state = "PASS" if passed else "FAIL"
    line = f"criterion {number} {state}: {title}"
    if detail:
        line += f" [{detail}]"
    _CRITERIA.append((number, line))
    print(line, flush=True)


@pytest.fixture
def record_criterion():
    """Callable(number, title, passed, detail) echoed in the final summary."""
    return _record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.write_sep("-", "acceptance criteria")
        for _, line in sorted(_CRITERIA):
            terminalreporter.write_line(line)
