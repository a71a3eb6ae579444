import pytest

from crankforge import run_settings


@pytest.fixture
def certify_config(crankforge_seed) -> run_settings.RunConfig:
    """Enough coefficients for level-6, weight-4 spans plus the safety margin."""
    return run_settings.RunConfig(trunc_order=120, enumeration_cap=12, seed=crankforge_seed)


@pytest.fixture
def full_config(crankforge_seed) -> run_settings.RunConfig:
    """The default truncation order with brute force up to weight 25."""
    return run_settings.RunConfig(enumeration_cap=25, seed=crankforge_seed)
