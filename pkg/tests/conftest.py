import pytest

from eaqmds import gfield


@pytest.fixture(scope="session")
def tower13():
    return gfield.make_tower(13)


@pytest.fixture(scope="session")
def tower17():
    return gfield.make_tower(17)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
