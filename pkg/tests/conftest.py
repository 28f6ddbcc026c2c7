import pytest

_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_KEY] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    line = f"{'PASS' if rep.passed else 'FAIL'} criterion {number}: {title}"
    item.config.stash[_KEY][number] = line


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash[_KEY]
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
