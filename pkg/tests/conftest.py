import pytest

# criterion id -> (title, passed so far)
_criteria: dict[str, tuple[str, bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (rep.when != "call" and not rep.failed):
        return
    cid, title = marker.args
    _, ok = _criteria.get(cid, (title, True))
    _criteria[cid] = (title, ok and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_criteria):
        title, ok = _criteria[cid]
        terminalreporter.write_line(f"{cid} {'PASS' if ok else 'FAIL'} {title}")
