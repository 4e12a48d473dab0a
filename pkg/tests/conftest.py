import re

_CRITERIA: dict[str, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or report.outcome != "passed":
        key = f"criterion {m.group(1)} ({m.group(2).replace('_', ' ')})"
        if _CRITERIA.get(key) != "FAIL":
            _CRITERIA[key] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split()[1])):
        terminalreporter.write_line(f"{_CRITERIA[key]}  {key}")
