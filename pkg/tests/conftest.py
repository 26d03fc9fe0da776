import pytest

from scoreseq.asympt import constants, lambda_enclosure

ACCEPTANCE_RESULTS: list[str] = []


@pytest.fixture(scope="session")
def lam100():
    return lambda_enclosure(100)


@pytest.fixture(scope="session")
def consts(lam100):
    return constants(lam100)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
