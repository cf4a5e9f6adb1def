"""Exception hierarchy; the CLI maps these onto exit codes."""


class TPSchurError(Exception):
    pass


class DomainError(TPSchurError, ValueError):
    """Inputs outside the mathematical domain of an operation."""


class SingularNodesError(DomainError):
    """Repeated nodes where a Vandermonde denominator must be nonzero."""


class FactorizationDegenerateError(DomainError):
    """A denominator minor of the bidiagonal factorization vanished."""

    def __init__(self, message, minor=None):
        super().__init__(message)
        self.minor = minor


class ResourceGuardError(TPSchurError):
    """A configured size guard was exceeded."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class IdentityMismatchError(TPSchurError):
    """Two independent closed forms of the same quantity disagree."""
