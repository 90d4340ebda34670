import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hypothesis import settings  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

# acceptance criteria report their verdicts here for the terminal summary
CRITERIA: dict[int, tuple[str, bool, float]] = {}


@pytest.fixture(scope="session")
def criteria():
    return CRITERIA


@pytest.fixture(scope="session")
def census():
    """Full census: k-extendability up to n = 12 and k = 3, matching-covered checks up to n = 10."""
    from mcbip.census import run_census

    records = []
    summary = run_census(12, 3, sink=records.append, mc_max_n=10)
    return summary, records


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        title, ok, secs = CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f}s)")
