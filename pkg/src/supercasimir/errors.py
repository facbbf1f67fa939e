"""Exception hierarchy.

The CLI maps these onto process exit codes, so each failure class that the
user can act on differently gets its own type.
"""


class CasimirError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain of an operation."""


class ConfigError(CasimirError, ValueError):
    """An evaluation point or CLI configuration is invalid."""


class GeometryError(ConfigError):
    """Sphere-plate geometry outside the range where PFA is credible."""


class ExpansionValidityError(DomainError):
    """Small-skin-depth expansion requested outside its validity range."""


class PerturbativeValidityError(DomainError):
    """Low-temperature perturbative formula requested outside its range."""


class NonConvergenceError(CasimirError, ArithmeticError):
    """Matsubara summation did not converge before the l cap.

    Attributes
    ----------
    partial_sum : float
        Accumulated value at the point of giving up (same units as the sum).
    bound : float
        Magnitude of the last evaluated term, a rough bound on what is missing
        per remaining term.
    l_reached : int
    """

    def __init__(self, message, partial_sum, bound, l_reached):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.bound = bound
        self.l_reached = l_reached


class CancellationRefusal(CasimirError, ArithmeticError):
    """Direct differencing would lose the answer to cancellation."""
