import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the per-criterion acceptance lines after the test run."""
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "_LINES", None) if mod else None
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(lines):
        terminalreporter.line(lines[num])
    if 8 in lines:
        terminalreporter.line(
            "(criterion 8 is strict-xfail: unattainable as stated, see its docstring)"
        )
