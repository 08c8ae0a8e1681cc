import pytest

from schurring.oracle import enumerate_leung_man
from schurring.sections import is_quasidense

# lines printed after the run by the acceptance module
ACCEPTANCE_LINES: list[str] = []


def census(n_max, n_min=1):
    for n in range(n_min, n_max + 1):
        yield from enumerate_leung_man(n)


def quasidense_census(n_max, n_min=1):
    return (a for a in census(n_max, n_min) if is_quasidense(a))


@pytest.fixture(scope="session")
def small_census():
    return list(census(12))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
