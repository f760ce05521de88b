"""Exception hierarchy shared across the package.

The command-line layer maps these classes onto stable exit codes: data
validation failures exit 1, configuration and resource problems exit 2,
statistical precondition failures exit 3.
"""


class CapoteError(Exception):
    """Base class for all errors raised by this package."""


class CorpusFormatError(CapoteError):
    """A corpus or annotation file is malformed."""


class ConfigurationError(CapoteError):
    """Missing or unusable configuration, resource file, or credential."""


class TransportError(CapoteError):
    """An HTTP request failed."""

    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class StatsError(CapoteError):
    """Base class for statistical precondition failures."""


class DegenerateInputError(StatsError):
    """Input series too short, constant, or otherwise unusable."""


class CollinearityError(StatsError):
    """Design matrix is rank deficient."""

    def __init__(self, message: str, columns: tuple[str, ...] = ()):
        super().__init__(message)
        self.columns = tuple(columns)


class DegreesOfFreedomError(StatsError):
    """Too few observations for the requested fit."""
