import re

from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = re.search(r"test_acceptance\.py::test_(criterion_\d+)", report.nodeid)
    if match:
        _ACCEPTANCE[match.group(1)] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda n: int(n.split("_")[1])):
        status = "PASS" if _ACCEPTANCE[name] == "passed" else _ACCEPTANCE[name].upper()
        terminalreporter.write_line(f"{status}: {name.replace('_', ' ')}")
