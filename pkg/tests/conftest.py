"""Shared fixtures and the per-criterion PASS/FAIL summary."""

from __future__ import annotations

import zlib
from collections import OrderedDict

import numpy as np
import pytest

_CRITERIA: "OrderedDict[int, dict]" = OrderedDict()


@pytest.fixture
def rng(request):
    # one stream per test, stable across runs and test order
    return np.random.default_rng(zlib.crc32(request.node.nodeid.encode()))


@pytest.fixture
def measure(request):
    """Attach measured values to the test report, shown in the criterion summary."""

    def record(**values):
        for key, val in values.items():
            request.node.user_properties.append((key, val))

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "tests": OrderedDict()})
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        entry["tests"][item.name] = (report.outcome, list(item.user_properties))


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        ok = entry["tests"] and all(o == "passed" for o, _ in entry["tests"].values())
        tr.write_line(f"CRITERION {number:2d} {'PASS' if ok else 'FAIL'}  {entry['title']}")
        for name, (outcome, props) in entry["tests"].items():
            detail = ", ".join(f"{k}={_fmt(v)}" for k, v in props)
            tr.write_line(f"    {outcome.upper():6s} {name}" + (f"  [{detail}]" if detail else ""))
