from __future__ import annotations

from collections import defaultdict

import pytest

from acceptance_criteria import CRITERIA

_outcomes: dict[int, list[tuple[str, bool]]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _outcomes[marker.args[0]].append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num, title in CRITERIA.items():
        results = _outcomes.get(num)
        if not results:
            tr.write_line(f"criterion {num:2d} NOT RUN  {title}")
            continue
        failed = [name for name, ok in results if not ok]
        verdict = "PASS" if not failed else "FAIL"
        tr.write_line(f"criterion {num:2d} {verdict}  {title}  ({len(results) - len(failed)}/{len(results)} cells)")
        for name in failed:
            tr.write_line(f"              failed: {name}")
