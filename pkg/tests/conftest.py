import itertools

import pytest

from aidesig import FactorSchema, base_schema, from_cells


@pytest.fixture(scope="session")
def base():
    return base_schema()


@pytest.fixture(scope="session")
def small5():
    """First five base factors; 3**5 = 243 patterns, 32 designations."""
    return FactorSchema("base-5-test", base_schema().factors[:5])


@pytest.fixture(scope="session")
def all_patterns5(small5):
    return [from_cells(small5, cells) for cells in itertools.product((None, 0, 1), repeat=5)]


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): one acceptance criterion")


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    label = report.user_properties and dict(report.user_properties).get("acceptance")
    if label:
        _ACCEPTANCE.append((label, "PASS" if report.passed else "FAIL", report.duration))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    marker = item.get_closest_marker("acceptance")
    if marker:
        item.user_properties.append(("acceptance", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, duration in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{outcome}  {label}  ({duration:.2f}s)")
