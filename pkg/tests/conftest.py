import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from repcheck.catalog import make_group  # noqa: E402

_ACCEPT = {}


@pytest.fixture(scope="session")
def sl2_5():
    return make_group("sl2", q=5)


@pytest.fixture(scope="session")
def psl2_5():
    return make_group("psl2", p=5)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when in ("setup", "call"):
        name = report.nodeid.split("::")[-1]
        if report.when == "setup" and report.passed:
            return
        _ACCEPT[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPT:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPT):
        outcome = _ACCEPT[name]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
