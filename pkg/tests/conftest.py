import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from helpers import TIMINGS  # noqa: E402

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "seen": False, "ids": []})
    if item.nodeid not in entry["ids"]:
        entry["ids"].append(item.nodeid)
    if report.when == "call" or report.failed:
        entry["seen"] = True
        if report.failed:
            entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ok"] and entry["seen"] else "FAIL"
        spent = [TIMINGS[i] for i in entry["ids"] if i in TIMINGS]
        timing = ""
        if spent:
            timing = f"  {sum(t for t, _ in spent):.2f}s (bound {sum(b for _, b in spent)}s)"
        terminalreporter.write_line(f"criterion {number:2d} {status}  {entry['title']}{timing}")
