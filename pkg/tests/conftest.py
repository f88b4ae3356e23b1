import re

_CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    m = re.search(r"test_acceptance\.py::test_ac(\d+)_(\w+)", report.nodeid)
    if m:
        _CRITERIA[int(m.group(1))] = (m.group(2), report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        name, outcome, duration = _CRITERIA[k]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"AC{k:<2} {verdict}  {name}  ({duration:.2f}s)")
