import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion this test belongs to")


def pytest_runtest_logreport(report):
    mark = getattr(report, "_criterion", None)
    if mark is None:
        return
    num, title = mark
    entry = _criteria.setdefault(num, {"title": title, "failed": [], "ran": 0})
    if report.when == "call" or report.outcome == "failed":
        entry["ran"] += 1
        if report.outcome == "failed":
            entry["failed"].append(report.nodeid.split("::")[-1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep._criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if not e["failed"] else "FAIL"
        line = f"AC{num} {status}: {e['title']}"
        if e["failed"]:
            line += f"  [failing: {', '.join(e['failed'])}]"
        terminalreporter.write_line(line)
