import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hybridbf.core import ArrayLayout, FrequencyGrid

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CRITERIA = []


@pytest.fixture
def layout():
    return ArrayLayout(32, 8)


@pytest.fixture
def grid():
    return FrequencyGrid(140e9, 28e9, 256)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    def record(number, title, ok, detail=""):
        _CRITERIA.append((number, title, ok, detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}  {detail}")
