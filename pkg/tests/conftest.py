import pytest

from electiongame.fixtures import table1, table2


@pytest.fixture
def t1():
    return table1()


@pytest.fixture
def t2():
    return table2()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(mod.LINES):
        terminalreporter.write_line(line)
