import sys


def pytest_terminal_summary(terminalreporter):
    verdicts = {}
    for name in ("test_acceptance", "tests.test_acceptance"):
        verdicts.update(getattr(sys.modules.get(name), "VERDICTS", {}))
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        terminalreporter.write_line(verdicts[n])
