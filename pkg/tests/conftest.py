import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion."""
    name = request.node.function.__doc__.strip().splitlines()[0]
    ACCEPTANCE_LINES.append(f"FAIL {name}")
    idx = len(ACCEPTANCE_LINES) - 1

    def done(detail=""):
        ACCEPTANCE_LINES[idx] = f"PASS {name}" + (f" ({detail})" if detail else "")

    return done


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
