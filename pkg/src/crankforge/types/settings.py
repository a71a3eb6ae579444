"""Global type settings for crankforge report models.

Controls how Pydantic models handle extra fields when reports, certificates
or payloads are read back from JSON:
- ``'allow'`` - Accept and store extra fields (debugging)
- ``'ignore'`` - Accept but discard extra fields (default)
- ``'forbid'`` - Reject documents with extra fields
"""

import typing

#: Global Pydantic model configuration for extra field handling.
#:
#: Reports written by newer releases may carry fields this release does not
#: know about. ``'ignore'`` lets older readers load them.
model_validate_extra: typing.Literal["allow", "ignore", "forbid"] = "ignore"

#: Version stamped into every top-level JSON document as ``"schema"``.
SCHEMA_VERSION: typing.Final[int] = 1
