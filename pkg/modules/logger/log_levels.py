import logging
from enum import Enum


class LogLevelException(Exception):
    """Base exception for LogLevel errors."""

    pass


class LogLevelValidationError(LogLevelException):
    """Raised when a level name or value does not map to a LogLevel."""

    pass


class LogLevel(Enum):
    """
    Logging levels understood by Logger, mirroring the standard library.

    The library logs branch choices at DEBUG, suite outcomes at INFO and
    ill-conditioned inputs at WARNING; the CLI console shows WARNING and
    above unless -v is given.
    """

    INFO = logging.INFO
    DEBUG = logging.DEBUG
    WARNING = logging.WARNING
    ERROR = logging.ERROR
    CRITICAL = logging.CRITICAL

    @classmethod
    def from_name(cls, name: str) -> "LogLevel":
        """
        Level for a case-insensitive name such as "debug" or "WARNING".

        :raises LogLevelValidationError: If the name is unknown.
        """
        try:
            return cls[str(name).strip().upper()]
        except KeyError:
            raise LogLevelValidationError(f"Invalid log level: {name}") from None

    @classmethod
    def for_verbosity(cls, verbose: bool) -> "LogLevel":
        """Console level of the CLI: DEBUG with -v, WARNING otherwise."""
        return cls.DEBUG if verbose else cls.WARNING
