"""Seeded randomness for property tests.

The seed comes from ``--crankforge-seed`` (default ``0``) and is printed in the
report header so a failing run can be repeated exactly.
"""

import numpy as np
import pytest

DEFAULT_SEED = 0


def pytest_addoption(parser):
    parser.addoption(
        "--crankforge-seed",
        action="store",
        type=int,
        default=DEFAULT_SEED,
        help="Seed of the numpy generator handed to randomised tests.",
    )


def pytest_report_header(config):
    return f"crankforge seed: {config.getoption('--crankforge-seed')}"


@pytest.fixture
def crankforge_seed(request) -> int:
    return request.config.getoption("--crankforge-seed")


@pytest.fixture
def rng(crankforge_seed) -> np.random.Generator:
    """A fresh generator per test, seeded from the command line."""
    return np.random.default_rng(crankforge_seed)
