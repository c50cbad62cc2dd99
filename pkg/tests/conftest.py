import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pseudohoops import builtin, chain, product  # noqa: E402
from pseudohoops.checks import standard_corpus  # noqa: E402
from pseudohoops.search import enumerate_algebras  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
_criteria: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    item_marks = getattr(report, "criterion", None)
    if item_marks is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            state = "FAIL (expected: " + report.wasxfail + ")"
        elif report.outcome == "passed":
            state = "PASS"
        else:
            state = "FAIL"
        _criteria.setdefault(item_marks, []).append((report.nodeid, state))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        for nodeid, state in _criteria[n]:
            terminalreporter.write_line(f"AC{n} {state}  [{nodeid.split('::')[-1]}]")


@pytest.fixture(scope="session")
def godel():
    return builtin("hoop5-godel")


@pytest.fixture(scope="session")
def wajsberg():
    return builtin("hoop5-wajsberg")


@pytest.fixture(scope="session")
def diamond():
    return product(chain(1), chain(1))


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


@pytest.fixture(scope="session")
def small_corpus():
    """Every generated algebra up to order 4 with a zero plus the examples."""
    out = [A for n in (1, 2, 3, 4) for A in enumerate_algebras(n)]
    return out + [builtin("hoop5-godel"), builtin("hoop5-wajsberg"), product(chain(1), chain(1))]
