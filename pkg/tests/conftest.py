import os

import numpy as np
import pytest

SEED = int(os.environ.get("LINDQBIT_SEED", "20260810"))


def pytest_report_header(config):
    return f"lindqbit random ensembles seeded with {SEED} (override via LINDQBIT_SEED)"


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)
