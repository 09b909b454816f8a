import time
from collections import defaultdict

import pytest
from hypothesis import settings

settings.register_profile("suite", max_examples=100, deadline=None, derandomize=True)
settings.load_profile("suite")

# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion

_CRITERIA = defaultdict(list)
_TIMES = defaultdict(float)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    k = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _CRITERIA[k].append((item.nodeid, rep.outcome))
        _TIMES[k] += rep.duration


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        results = _CRITERIA[k]
        failed = [nid.split("::")[-1] for nid, out in results if out != "passed"]
        status = "PASS" if not failed else "FAIL"
        line = f"CRITERION {k}: {status} ({len(results) - len(failed)}/{len(results)} checks, {_TIMES[k]:.2f} s)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)


@pytest.fixture
def stopwatch():
    start = time.perf_counter()
    return lambda: time.perf_counter() - start
