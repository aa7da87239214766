"""Exception types shared across the package."""


class Cos2PhiError(Exception):
    """Base class for package errors."""


class DegenerateTransitionError(Cos2PhiError):
    """Raised when a quantity is undefined because f01 is (numerically) zero."""


class ConvergenceError(Cos2PhiError):
    """Raised when an iterative procedure fails to converge."""


class GradientConsistencyError(Cos2PhiError):
    """Raised when Hellmann-Feynman and finite-difference gradients disagree."""


class SingularReductionError(Cos2PhiError):
    """Raised when the higher-level block of a rate-matrix generator is singular."""


class PoleError(Cos2PhiError):
    """Raised when a closed-form expression is evaluated exactly at a pole."""


class EigensolverError(Cos2PhiError):
    """Raised when dense diagonalization fails, with matrix diagnostics."""
