"""Exception hierarchy shared by every module of the package."""


class CliqueMatchError(Exception):
    """Base class for all package errors."""


class InputError(CliqueMatchError, ValueError):
    """Malformed or out-of-range input."""


class FormatError(InputError):
    """A text file could not be parsed.

    ``line`` is the 1-based line number of the offending line, or ``None``
    when the problem concerns the document as a whole.
    """

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class CapacityError(CliqueMatchError):
    """An enumeration or construction would exceed its configured bound."""

    def __init__(self, message, bound=None):
        self.bound = bound
        super().__init__(message)


class ContractViolation(CliqueMatchError):
    """A caller broke an operation's precondition (e.g. a non-clique)."""
