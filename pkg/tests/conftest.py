import sys
from collections import OrderedDict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "failed": [], "ran": 0})
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        entry["ran"] += 1
        if rep.outcome != "passed":
            entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        status = "PASS" if not e["failed"] and e["ran"] else "FAIL"
        line = f"{status} criterion {n}: {e['title']}"
        if e["failed"]:
            line += f"  [failing: {', '.join(e['failed'])}]"
        tr.write_line(line)
