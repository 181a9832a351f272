"""Python bindings for the sarlab C++ core."""

from ._sarlab import *  # noqa: F401,F403
from ._sarlab import (  # noqa: F401
    ConfigError,
    DomainError,
    Error,
    FitError,
    IoError,
    NumericError,
    ParameterError,
    SizeError,
    ValidationError,
)
