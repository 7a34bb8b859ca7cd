"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    passed, _ = _outcomes.get(number, (True, title))
    if report.failed or (report.when == "call" and report.skipped):
        passed = False
    _outcomes[number] = (passed, title)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        passed, title = _outcomes[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number}: {title}")
