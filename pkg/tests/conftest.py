from collections import defaultdict

import pytest

_outcomes: dict[int, dict] = defaultdict(lambda: {"label": "", "failed": []})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    report = (yield).get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, label = marker.args
    entry = _outcomes[number]
    entry["label"] = label
    entry.setdefault("seen", set()).add(item.nodeid)
    if report.failed:
        entry["failed"].append(item.name)
    elif report.skipped:
        entry.setdefault("skipped", []).append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        entry = _outcomes[number]
        if entry["failed"]:
            status = "FAIL"
            detail = " (" + ", ".join(sorted(set(entry["failed"]))) + ")"
        elif entry.get("skipped"):
            status, detail = "SKIP", ""
        else:
            status, detail = "PASS", ""
        terminalreporter.write_line(f"{status} criterion {number:>2}: {entry['label']}{detail}")
