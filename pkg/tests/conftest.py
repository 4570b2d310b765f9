import pytest

from sosreduce import GramMatrix, MonomialBasis, parse_polynomial

QUARTIC = "3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1"
SPARSE = "x1^2 + x2^2 + x1^4*x2^4"
MOTZKIN = "x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1"

# basis [1, x1, x2, x1^2] and the known Gram matrix for QUARTIC
QUARTIC_REDUCED = ((0, 0), (1, 0), (0, 1), (2, 0))
QUARTIC_GRAM = ((1, 0, 0, 0), (0, 7, -2, 0), (0, -2, 4, -1), (0, 0, -1, 3))


@pytest.fixture
def quartic():
    return parse_polynomial(QUARTIC)


@pytest.fixture
def sparse():
    return parse_polynomial(SPARSE)


@pytest.fixture
def quartic_witness():
    return MonomialBasis(2, QUARTIC_REDUCED), GramMatrix(QUARTIC_GRAM)


# -- acceptance reporting ---------------------------------------------------------
# Tests marked ``criterion(number, text)`` get one PASS/FAIL line in the summary.

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, text = mark.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[number] = (report.outcome == "passed", text)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, text = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {text}")
