import pytest

from fermatbias.jacobi import JacobiProvider


@pytest.fixture(scope="session")
def provider3():
    return JacobiProvider(3)


@pytest.fixture(scope="session")
def provider5():
    return JacobiProvider(5)


@pytest.fixture(scope="session")
def provider7():
    return JacobiProvider(7)


@pytest.fixture(scope="session")
def providers(provider3, provider5, provider7):
    return {3: provider3, 5: provider5, 7: provider7}


def pytest_terminal_summary(terminalreporter):
    from acceptance_registry import LINES

    if LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
