"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input violates a documented precondition (parameter range, grid size, ...)."""


class QuadratureError(RuntimeError):
    """A quadrature grid failed its sanity check or an adaptive rule did not converge."""


class NonPositiveF(RuntimeError):
    """Numerical integration of the envelope ODE drove f(t) to a nonpositive value."""
