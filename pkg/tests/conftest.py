import pytest

from crankforge import run_settings


@pytest.fixture
def run_config(crankforge_seed) -> run_settings.RunConfig:
    """A small configuration for suites exercised from tests."""
    return run_settings.RunConfig(trunc_order=60, enumeration_cap=12, seed=crankforge_seed)
