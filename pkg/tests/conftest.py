import time

import pytest

_RESULTS = []


class CriterionLog:
    """Collects one summary line per acceptance criterion."""

    def __init__(self, number, title):
        self.number, self.title = number, title
        self.t0 = time.perf_counter()

    def report(self, ok, detail=""):
        elapsed = time.perf_counter() - self.t0
        line = (f"criterion {self.number:>2} {'PASS' if ok else 'FAIL'}  {self.title}"
                f"  [{detail}{'; ' if detail else ''}{elapsed:.1f} s]")
        _RESULTS.append((self.number, line))
        print(line)
        return ok


@pytest.fixture
def criterion():
    return CriterionLog


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_RESULTS):
        terminalreporter.write_line(line)
