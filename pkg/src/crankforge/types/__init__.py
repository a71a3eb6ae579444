"""Type definitions for crankforge reports and payloads.

Module Organization
-----
- :mod:`base` - Base model with common configuration
- :mod:`field_types` - Exact rational field type and constrained integers
- :mod:`settings` - Global type configuration
- :mod:`payloads` - JSON forms of series and crank tables
- :mod:`reports` - Identity, inequality and transformation reports
- :mod:`certificates` - Quasimodular monomials, certificates, representations
"""

from . import (
    base,
    certificates,
    field_types,
    payloads,
    reports,
    settings,
)
