import os
import re
import sys

sys.path.insert(0, os.path.dirname(__file__))

_acceptance_results = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if m and report.when == "call":
        _acceptance_results[int(m.group(1))] = (m.group(2), report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for num in sorted(_acceptance_results):
        name, outcome = _acceptance_results[num]
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"  {tag} criterion {num:2d}: {name}")
