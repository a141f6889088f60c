"""Exception hierarchy shared by the library and the command line front end."""


class BoolModError(ValueError):
    """Base class for domain errors raised by :mod:`boolmod`."""


class ArityError(BoolModError):
    pass


class DegenerateFunctionError(BoolModError):
    """Raised when an operation needs a non-constant function."""


class OutOfDomainError(BoolModError):
    pass


class NotNestedCanalizingError(BoolModError):
    pass


class PartitionError(BoolModError):
    pass


class ResourceError(BoolModError):
    """Raised instead of silently truncating a brute-force enumeration."""


class PlacementError(BoolModError):
    pass


class PolicyError(BoolModError):
    pass


class MappingError(BoolModError):
    pass


class FamilyError(BoolModError):
    pass


class ContradictionError(BoolModError):
    pass


class OrderError(BoolModError):
    pass


class NetworkError(BoolModError):
    pass


class ParseError(BoolModError):
    """Syntax or semantic error in an input document.

    ``line`` and ``column`` are 1-based; either may be ``None`` when the
    error has no meaningful position (e.g. JSON schema problems).
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
