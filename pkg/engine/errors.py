"""Domain exceptions for state construction, distributions and quadrature."""


class StateValidationError(ValueError):
    """A density matrix or state specification violates the state invariants."""


class DimensionMismatchError(ValueError):
    """Two objects that must share a Hilbert-space dimension do not."""


class DistributionError(ValueError):
    """A probability vector or mixing weight vector is not a valid distribution."""


class QuadratureError(ArithmeticError):
    """A quadrature identity or positivity check failed beyond tolerance."""
