"""Exception types shared by all modules.

The CLI maps DomainError to exit code 2 and ResourceCapError to exit code 3.
"""


class ArtifactError(Exception):
    """Base class for errors raised by this package."""


class DomainError(ArtifactError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ResourceCapError(ArtifactError):
    """A requested size exceeds the configured enumeration cap."""


class DivergenceError(DomainError):
    """A series or integral is known to diverge at the requested point."""


class IntegrationError(ArtifactError, ArithmeticError):
    """Numerical integration produced a non-finite value before blow-up."""
