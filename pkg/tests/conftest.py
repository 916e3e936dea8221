import pytest

_criteria = {}


def pytest_runtest_logreport(report):
    marker = _markers.get(report.nodeid)
    if marker is None:
        return
    if report.when == "call" or report.outcome != "passed":
        number, title = marker
        previous = _criteria.get(number, (title, True))
        _criteria[number] = (title, previous[1] and report.outcome == "passed")


_markers = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _markers[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number} {title}: {'PASS' if ok else 'FAIL'}")


@pytest.fixture
def fake_clock():
    class Clock:
        now = 0.0

        def __call__(self):
            return self.now

    return Clock()
