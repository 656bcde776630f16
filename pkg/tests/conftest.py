import pytest

from olapreduce.fixtures import traveler_cdt, traveler_facts, traveler_reference, traveler_schema


@pytest.fixture(scope="session")
def cdt():
    return traveler_cdt()


@pytest.fixture(scope="session")
def schema():
    return traveler_schema()


@pytest.fixture(scope="session")
def facts():
    return traveler_facts()


@pytest.fixture(scope="session")
def reference():
    return traveler_reference()


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    title = getattr(report, "criterion", None)
    if title:
        _criteria[title] = "PASS" if report.passed else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker:
        number, title = marker.args
        outcome.get_result().criterion = f"AC{number} {title}"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for title in sorted(_criteria, key=lambda t: int(t.split()[0][2:])):
        terminalreporter.write_line(f"{_criteria[title]}  {title}")
