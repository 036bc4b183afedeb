import os

from hypothesis import settings

import report

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def pytest_terminal_summary(terminalreporter):
    if not report.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(report.RESULTS):
        terminalreporter.write_line(report.RESULTS[n])
