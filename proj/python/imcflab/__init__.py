"""Python access to the imcflab core."""

from ._imcflab import *  # noqa: F401,F403
from ._imcflab import ConfigError, DomainError, OracleMode  # noqa: F401
