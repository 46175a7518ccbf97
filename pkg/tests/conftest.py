import pytest

from polylcm import Polynomial, build_factor_table

X2P1 = Polynomial((1, 0, 1))
CUBIC = Polynomial((-2, 0, 0, 1))

# a small zoo of irreducible polynomials, some with ramified primes and content
ZOO = [
    X2P1,
    Polynomial((1, 1, 1)),
    CUBIC,
    Polynomial((3, 1, 0, 0, 2)),
    Polynomial((2, 0, 2)),  # 2x^2 + 2: content 2
    Polynomial((7, 3)),
    Polynomial((1, 0, 0, 0, 0, 1, 1)),
    Polynomial((-5, 0, 0, 0, 1)),
]


@pytest.fixture(scope="session")
def table_1e5():
    return build_factor_table(X2P1, 10**5)


@pytest.fixture(scope="session")
def table_1e6():
    return build_factor_table(X2P1, 10**6)


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE[report.nodeid] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.failed:
        _ACCEPTANCE[report.nodeid] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _ACCEPTANCE.items():
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
