import pytest

from pgodd.plane import get_plane


@pytest.fixture(scope="session")
def plane():
    return get_plane


SMALL_Q = (3, 5, 7, 9, 11, 13)


ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split(".")[0]), k)):
        terminalreporter.write_line(ACCEPTANCE[key])
