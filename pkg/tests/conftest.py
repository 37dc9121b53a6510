import numpy as np
import pytest

import re

_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): acceptance criterion check")


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if marker:
        label, title = marker
        _CRITERIA[str(label)] = (title, "PASS" if report.passed else "FAIL")


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    def order(label):
        num, suffix = re.match(r"(\d+)(.*)", label).groups()
        return int(num), suffix

    for label in sorted(_CRITERIA, key=order):
        title, outcome = _CRITERIA[label]
        terminalreporter.write_line(f"criterion {label:<3} {outcome}  {title}")
