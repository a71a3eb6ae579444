"""Run configuration shared by the command-line interface and the identity suites.

Example:
    Override the truncation order from the environment::

        >>> from crankforge import run_settings
        >>> run_settings.RunConfig.from_environ({"CRANKFORGE_ORDER": "120"}).trunc_order
        120
        >>> run_settings.DEFAULT_RUN_CONFIG.enumeration_cap
        25

See Also:
    :data:`crankforge.combinatorics.ENUMERATION_LIMIT`, the hard ceiling for
    ``enumeration_cap``.
"""

import os
import typing

import pydantic

from . import combinatorics, qseries
from .types import base

__all__ = [
    "ORDER_ENVVAR",
    "RunConfig",
    "DEFAULT_RUN_CONFIG",
]

#: Environment variable overriding the default truncation order.
ORDER_ENVVAR = "CRANKFORGE_ORDER"


class RunConfig(base.BaseModel):
    """Settings of one ``crankforge`` invocation.

    Attributes
    ----------
    trunc_order : int
        Truncation order of every q-series computation (``>= 1``).
    enumeration_cap : int
        Largest weight brute-force enumeration may reach in this run; at most
        :data:`~crankforge.combinatorics.ENUMERATION_LIMIT`.
    output_format : {"csv", "json"}
        Machine-readable output format of table-like commands.
    seed : int
        Seed of every randomised property suite; printed with the report.
    """

    trunc_order: int = pydantic.Field(default=qseries.DEFAULT_TRUNC_ORDER, ge=1)
    enumeration_cap: int = pydantic.Field(default=25, ge=1, le=combinatorics.ENUMERATION_LIMIT)
    output_format: typing.Literal["csv", "json"] = "csv"
    seed: int = 0

    @classmethod
    def from_environ(
        cls,
        environ: typing.Optional[typing.Mapping[str, str]] = None,
        **overrides: typing.Any,
    ) -> "RunConfig":
        """Defaults, then ``CRANKFORGE_ORDER`` from ``environ``, then ``overrides``."""
        environ = os.environ if environ is None else environ
        values: dict[str, typing.Any] = {}
        if environ.get(ORDER_ENVVAR):
            values["trunc_order"] = int(environ[ORDER_ENVVAR])
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


#: Configuration used when nothing is overridden.
DEFAULT_RUN_CONFIG = RunConfig()
