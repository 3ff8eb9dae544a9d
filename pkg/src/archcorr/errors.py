"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the supported domain."""


class NumericError(ArithmeticError):
    """A numerical procedure produced a non-finite value or failed to converge."""


class ResourceError(RuntimeError):
    """A requested computation exceeds a configured size guard."""


class PSDViolation(NumericError):
    """A correlation matrix has eigenvalues more negative than tolerated."""
