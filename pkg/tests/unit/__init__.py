"""Unit tests for the crankforge package."""
