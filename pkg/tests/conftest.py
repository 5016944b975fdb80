import pytest

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or rep.failed:
        prev = _CRITERIA.get(number, ("passed", title))[0]
        state = "failed" if rep.failed or prev == "failed" else rep.outcome
        _CRITERIA[number] = (state, title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        state, title = _CRITERIA[number]
        word = "PASS" if state == "passed" else "FAIL"
        terminalreporter.write_line(f"{word} criterion {number}: {title}")
