import pytest

from sms_forge.fixtures import builtin_algebra, builtin_module

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def ex3():
    return builtin_algebra("example3")


@pytest.fixture(scope="session")
def ex4():
    return builtin_algebra("example4")


@pytest.fixture(scope="session")
def ex5():
    return builtin_algebra("example5")


@pytest.fixture(scope="session")
def zs(ex5):
    return [builtin_module("example5", f"Z_{i}") for i in range(4)]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
