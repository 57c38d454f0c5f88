import random

import pytest

ACCEPTANCE_RESULTS = {}


@pytest.fixture
def rng():
    return random.Random(20241014)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k[2:])):
        ok, title, elapsed, budget = ACCEPTANCE_RESULTS[key]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"{key:>4} {status}  {title}  ({elapsed * 1000:.1f} ms, budget {budget * 1000:.0f} ms)")
