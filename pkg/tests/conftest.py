import pytest

from quadcodes import gf

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def f3():
    return gf.make_field(3)


@pytest.fixture(scope="session")
def f4():
    return gf.make_field(2, 2)


@pytest.fixture(scope="session")
def f5():
    return gf.make_field(5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
