"""Shared fixtures and the per-criterion acceptance summary."""

from __future__ import annotations

import pytest

from cyhodge.cy_workbench_cli.catalog import default_catalog

CRITERIA = {
    1: "mirror-quintic chain",
    2: "hypergeometric tables",
    3: "numeric classification of base hypergeometric points",
    4: "Grassmannian AESZ25",
    5: "Hadamard example",
    6: "property suites",
}

_results: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")
    config.addinivalue_line("markers", "slow: numeric continuation, several seconds")


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(crit, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        res = _results.get(n)
        if res is None:
            continue
        status = "PASS" if all(res) else "FAIL"
        terminalreporter.write_line(f"criterion {n} ({CRITERIA[n]}): {status}  [{sum(res)}/{len(res)} checks]")


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()
