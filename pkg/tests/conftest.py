import pytest

_LOG = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LOG] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        callspec = getattr(item, "callspec", None)
        if callspec is not None:
            doc = f"{doc} [{callspec.id}]"
        item.config.stash[_LOG].append((marker.args[0], rep.passed, doc))


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(_LOG, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, doc in log:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {label:<6} {doc}")
