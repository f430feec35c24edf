"""Exception types shared by all tgeom modules."""


class TGeometryError(Exception):
    """Base class for every error raised by tgeom."""


class DomainError(TGeometryError, ValueError):
    """A point is not in the domain of the space it was evaluated on."""


class ContractError(TGeometryError, ValueError):
    """An operation was called with arguments violating its preconditions."""


class TableValidationError(ContractError):
    """A tabulated world function is not symmetric or has a nonzero diagonal.

    ``offending`` lists the ``(i, j)`` index pairs that failed.
    """

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class NoBasisError(ContractError):
    """No pair of sample points has a nonvanishing world function."""


class UnsupportedOperation(TGeometryError, TypeError):
    """The backend cannot perform the requested operation (e.g. needs coordinates)."""
