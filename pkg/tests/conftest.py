import re

import numpy as np
import pytest

from extlip import PointedMetricSpace

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_outcomes = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.outcome != "passed":
        if report.outcome != "passed" or key not in _outcomes:
            _outcomes[key] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), outcome in sorted(_outcomes.items()):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {name}: {status}")


@pytest.fixture
def m3():
    """{0, a, b} with d(0,a)=1, d(0,b)=2, d(a,b)=1.5."""
    return PointedMetricSpace(("0", "a", "b"), [[0, 1, 2], [1, 0, 1.5], [2, 1.5, 0]])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
