import time

import pytest

from fogndt import default_grid, run_verification


@pytest.fixture(scope="session")
def default_grid_report():
    """One full default-grid verification, shared by every test that
    needs grid-wide certificate results; returns (report, seconds)."""
    start = time.perf_counter()
    report = run_verification(default_grid())
    return report, time.perf_counter() - start
