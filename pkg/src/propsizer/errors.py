"""Exception types used across the package.

Infeasibility is always reported through typed errors so callers can tell
apart "your design cannot work" from "your input is malformed" or "the
model broke down numerically".
"""


class PropsizerError(Exception):
    """Base class for all package errors."""


class DomainError(PropsizerError):
    """An input is outside the validity range of a model."""


class InfeasibleError(PropsizerError):
    """A design, operating point or selection cannot satisfy its constraints."""


class ThrottleInfeasibleError(InfeasibleError):
    """The required operating state exceeds full throttle (sigma > 1)."""


class BrownoutError(InfeasibleError):
    """The battery bus voltage collapses to zero or below under load."""


class MotorLimitError(InfeasibleError):
    """Motor ratings are internally inconsistent (no valid operating envelope)."""


class SelectionError(InfeasibleError):
    """No catalog product satisfies the selection constraints.

    ``constraint`` names the binding constraint for diagnostics.
    """

    def __init__(self, message: str, constraint: str | None = None):
        super().__init__(message)
        self.constraint = constraint


class CatalogRangeError(InfeasibleError):
    """A requested value lies outside the range covered by the catalog fit."""


class FitError(PropsizerError):
    """A statistical fit cannot be computed from the given records."""


class CatalogError(PropsizerError):
    """A catalog file is unreadable, malformed or contains invalid records."""


class ModelInconsistencyError(PropsizerError):
    """A computed quantity violates a physical bound (e.g. efficiency > 1)."""


class ConvergenceError(PropsizerError):
    """An iterative solver failed to converge."""
