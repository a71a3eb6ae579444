"""This is a very top-level conftest.py (applies to all tests, including doctests)."""

import pytest

import crankforge

pytest_plugins = [
    "tests.test_plugins.seeded_random",
]


@pytest.fixture(autouse=True)
def add_crankforge(doctest_namespace):
    doctest_namespace["crankforge"] = crankforge
    yield


@pytest.fixture(autouse=True)
def _clean_order_env(monkeypatch):
    """Keep a ``CRANKFORGE_ORDER`` from the calling shell out of the tests."""
    monkeypatch.delenv(crankforge.run_settings.ORDER_ENVVAR, raising=False)
    yield
