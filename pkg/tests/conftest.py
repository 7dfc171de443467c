import pytest

from raygraph.coding import alpha


@pytest.fixture(scope="session")
def axis():
    return [alpha(k) for k in range(7)]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA, RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, _ in CRITERIA:
        if name in RESULTS:
            terminalreporter.write_line(RESULTS[name])
