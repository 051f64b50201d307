import pytest

ACCEPTANCE_RESULTS: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    """Records a PASS/FAIL line for the acceptance summary."""
    name = request.node.name
    ACCEPTANCE_RESULTS[name] = "FAIL"

    def passed(detail=""):
        ACCEPTANCE_RESULTS[name] = "PASS" + (f"  ({detail})" if detail else "")

    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{status.split()[0]:4}  {name}{status[4:]}")
