"""Exception types shared across the package."""


class VecpowError(Exception):
    """Base class for all errors raised by this package."""


class NonConvergence(VecpowError):
    """An iterative procedure exhausted its budget before meeting tolerance.

    ``estimate`` carries the last available value when one exists.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class NonFinite(VecpowError):
    """A function returned inf or nan where a finite value was required."""


class DomainError(VecpowError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class PoleAtNonpositiveInteger(DomainError):
    """Gamma function evaluated at 0, -1, -2, ..."""


class LowerParamPole(DomainError):
    """A lower hypergeometric parameter hit a nonpositive integer at a live term."""


class ConvergenceDomain(DomainError):
    """Series requested outside its region of convergence."""


class SingularPoint(DomainError):
    """The kernel |r_1 + ... + r_N|^(-nu) is singular at the requested point."""


class ParseError(VecpowError):
    """Malformed CLI input document."""


class ValidationError(VecpowError, ValueError):
    """Well-formed input that violates a schema constraint."""
