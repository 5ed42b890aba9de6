import numpy as np
import pytest

SEED = 20260809


def pytest_report_header(config):
    return f"holopath deterministic test seed: {SEED}"


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)
