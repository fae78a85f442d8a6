"""Exception types shared across the package.

Numerical routines signal structured failures instead of returning NaNs,
so integrators and pipelines can react (shrink a step, stop with a report)
rather than silently propagating garbage.
"""


class PseudohermError(Exception):
    """Base class for all package errors."""


class DomainError(PseudohermError):
    """Input outside the mathematical domain of an operation."""


class HermitizationError(DomainError):
    """No valid hermitizing map exists for the requested state (|z| > 1 region)."""


class DivergentZError(DomainError):
    """The coupling ratio z = 2*mu/eps diverges (eps -> 0 at finite mu)."""


class PoleError(PseudohermError):
    """Evaluation too close to a trigonometric pole to be meaningful."""


class BranchCrossingError(PseudohermError):
    """A closed-form logarithm crossed its branch cut during a run."""

    def __init__(self, message, crossing_time=None):
        super().__init__(message)
        self.crossing_time = crossing_time


class CoordinateSingularityError(PseudohermError):
    """Squeeze-phase equation evaluated at r ~ 0 where the phase is undefined."""


class SingularRhsError(PseudohermError):
    """An ODE right-hand side hit a denominator below tolerance."""


class BreakdownError(PseudohermError):
    """Integration could not proceed; carries the last valid time and state."""

    def __init__(self, message, time=None, state=None):
        super().__init__(message)
        self.time = time
        self.state = state


class MapOverflowError(PseudohermError):
    """Fock-space map entries left the double floating range at this cutoff."""


class ConfigError(PseudohermError):
    """Malformed run configuration (unknown key, bad value, missing section)."""
