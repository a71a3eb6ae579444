"""Exact arithmetic for residual cranks of overpartitions.

This package computes the k-th residual crank of overpartitions by brute-force
enumeration and through its two-variable generating function, derives crank
moments, and certifies their quasimodular structure with exact rational
linear algebra over truncated q-series.

Quick Start
-----------
Crank counts and moments::

    >>> from crankforge import combinatorics, cranks
    >>> table = combinatorics.crank_table_bruteforce(1, 4)
    >>> table == cranks.crank_table_from_series(1, 4)
    True
    >>> [int(c) for c in cranks.moment_series(1, 2, 3).series.coeffs]
    [0, 2, 10, 28]

Quasimodular certificates::

    >>> from crankforge import quasimod
    >>> quasimod.find_representation(1, 2, 40).alphas
    {'(0,1)': 1, '(2,0)': 6}

Core Components
---------------
- :mod:`qseries` - exact truncated q-series, q-Pochhammer products, divisor sums
- :mod:`combinatorics` - partitions, overpartitions, residual cranks, crank tables
- :mod:`cranks` - two-variable crank generating functions and moment series
- :mod:`linalg` - incremental exact Gauss-Jordan elimination
- :mod:`quasimod` - Eisenstein series and quasimodular span certificates
- :mod:`numeric` - floating-point checks of transformation laws
- :mod:`verify` - named identity suites
- :mod:`run_settings` - run configuration
- :mod:`types` - Pydantic models for payloads, reports and certificates
- :mod:`exc` - exception types

Command-line usage lives in :mod:`crankforge.main` (``crankforge --help``).
"""

from . import (
    __version__,
    combinatorics,
    cranks,
    exc,
    linalg,
    numeric,
    qseries,
    quasimod,
    run_settings,
    types,
    verify,
)

__all__ = [
    "__version__",
    "combinatorics",
    "cranks",
    "exc",
    "linalg",
    "numeric",
    "qseries",
    "quasimod",
    "run_settings",
    "types",
    "verify",
    "Series",
    "Overpartition",
    "CrankTable",
]

# Convenience imports for common classes
Series = qseries.Series
Overpartition = combinatorics.Overpartition
CrankTable = combinatorics.CrankTable
