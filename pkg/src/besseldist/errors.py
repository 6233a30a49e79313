"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


class SingularityError(DomainError):
    """A density was evaluated at its (integrable) singular point."""


class UnsupportedClosedForm(NotImplementedError):
    """No closed form exists for this family/function combination.

    Numerical routes live in :mod:`besseldist.oracle`.
    """


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class AmbiguityError(RuntimeError):
    """A scalar objective was not unimodal over the requested bracket."""

    def __init__(self, message, scan=None):
        super().__init__(message)
        self.scan = scan or []
