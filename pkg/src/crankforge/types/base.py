"""Base Pydantic model for crankforge reports and payloads.

See Also:
    https://docs.pydantic.dev/latest/
"""

import pydantic

from . import settings


class BaseModel(pydantic.BaseModel):
    """Base Pydantic model for every machine-readable crankforge value.

    Models are immutable once built. Fields that serialise under a reserved
    name (``schema``) declare an alias; :meth:`to_json` always dumps by alias.
    """

    model_config = pydantic.ConfigDict(
        extra=settings.model_validate_extra,
        frozen=True,
        populate_by_name=True,
    )

    def to_json(self, indent: int | None = 2) -> str:
        """Serialise to JSON using field aliases."""
        return self.model_dump_json(by_alias=True, indent=indent)


class VersionedModel(BaseModel):
    """A top-level document stamped with the output schema version."""

    schema_version: int = pydantic.Field(
        default=settings.SCHEMA_VERSION,
        alias="schema",
        description="Output schema version; bumped on incompatible changes.",
    )
