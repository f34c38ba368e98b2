import time

import pytest

_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    rep = outcome.get_result()
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = "PASS" if rep.outcome == "passed" else "FAIL"
        _ACCEPTANCE[number] = (title, status, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, duration = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title} ({duration:.2f} s)")


@pytest.fixture
def stopwatch():
    """Yields a callable returning seconds since the test body started."""
    t0 = time.perf_counter()
    return lambda: time.perf_counter() - t0
