"""Shared pytest wiring.

Acceptance tests are tagged with the ``criterion`` marker; after the
run, one uncaptured pass/fail line per criterion is printed in the
terminal summary so the acceptance status is readable at a glance even
when output capturing is on.
"""

import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(num, text): tags a test as one numbered acceptance "
        "criterion",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call":
        return
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, text = mark.args
    if rep.passed:
        status = "PASS"
    elif rep.skipped:
        status = "SKIP"
    else:
        status = "FAIL"
    # a parametrized criterion fails as a whole if any case fails
    prev = _RESULTS.get(num)
    if prev is None or prev[0] == "PASS":
        _RESULTS[num] = (status, text)
    elif status != "PASS":
        _RESULTS[num] = (status, text)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_RESULTS, key=int):
        status, text = _RESULTS[num]
        terminalreporter.write_line(f"criterion {num:>2}: {status}  {text}")
