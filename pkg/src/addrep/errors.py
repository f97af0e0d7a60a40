"""Exception hierarchy shared by every module."""


class AddrepError(Exception):
    """Base class for all errors raised by addrep."""


class OutOfBoundError(AddrepError):
    """A question was asked beyond the truncation bound of a sequence or profile."""


class DomainError(AddrepError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PositivityError(DomainError):
    """The operation requires a sequence of positive integers but 0 is present."""


class TruncationError(AddrepError):
    """The sequence is not materialized far enough to meet a requested tolerance."""


class CapacityError(AddrepError):
    """A generator hit its cap before producing the requested number of terms."""


class ConstructionError(AddrepError):
    """Inputs to a construction fail its structural requirements."""


class ConfigError(AddrepError):
    """An experiment configuration names something unknown or is malformed."""


class SequenceParseError(AddrepError):
    """A sequence file could not be parsed."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)
