import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        detail = dict(report.user_properties).get("detail", "")
        _criteria.append((name, report.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in _criteria:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}  {detail}")
