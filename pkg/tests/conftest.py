import json
from pathlib import Path

import pytest

from flowmatch.scoring import default_type_matrix
from flowmatch.taxonomy import read_taxonomy

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def tax12():
    return read_taxonomy(DATA / "taxonomy12.json")


@pytest.fixture(scope="session")
def tax12_parents():
    doc = json.loads((DATA / "taxonomy12.json").read_text())
    return {c["id"]: c["parents"] for c in doc["concepts"]}


@pytest.fixture(scope="session")
def type_table():
    return default_type_matrix()


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): acceptance criterion, reported in the summary")
    config._acceptance = []


def pytest_runtest_logreport(report):
    label = getattr(report, "acceptance_label", None)
    if label and (report.when == "call" or report.failed):
        report.config_results.append((label, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker:
        rep.acceptance_label = marker.args[0]
        rep.config_results = item.config._acceptance


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_acceptance", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in results:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {label}")
