from fractions import Fraction
from importlib import resources

import pytest


@pytest.fixture(scope="session")
def campaign_path():
    return resources.files("signbayes") / "data" / "itcsf1.csv"


@pytest.fixture(scope="session")
def campaign_rows(campaign_path):
    """(value, sigma) pairs as exact fractions, read without the library parser."""
    rows = []
    for line in campaign_path.read_text().splitlines():
        if line and line[0] in "+-0123456789":
            v, s = line.split(",")
            rows.append((Fraction(v), Fraction(s)))
    return rows


ACCEPTANCE_LINES = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    label = dict(report.user_properties).get("criterion")
    if label is not None:
        status = "PASS" if report.passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] {label}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
