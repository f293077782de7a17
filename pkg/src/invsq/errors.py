"""Exception and warning types shared across the toolkit."""

from __future__ import annotations


class InvsqError(Exception):
    """Base class for all toolkit errors."""


class FlowPoleError(InvsqError):
    """The flow denominator vanishes at this cutoff.

    The pole sits where the zero-energy exterior solution has a node at
    r = R, i.e. at R/r0 = c^(1/(2 nu)) for nu > 0 (c > 0 only) and at
    R/r0 = exp(-1/c) for nu = 0.

    Attributes
    ----------
    critical_ratio : float | None
        The R/r0 value of the pole, when it exists for the given
        extension parameters.
    """

    def __init__(self, message: str, critical_ratio: float | None = None):
        super().__init__(message)
        self.critical_ratio = critical_ratio


class RootMultiplicityError(InvsqError):
    """More than one bound-state root was found in the scan window.

    This contradicts the single-bound-state property the toolkit exists
    to check, so it is surfaced loudly instead of being averaged away.

    Attributes
    ----------
    roots : list[float]
        All refined roots, ascending.
    """

    def __init__(self, message: str, roots: list[float]):
        super().__init__(message)
        self.roots = list(roots)


class IntegrationError(InvsqError):
    """The radial integrator produced non-finite values or failed to
    converge even after rescaling."""


class ConditioningWarning(UserWarning):
    """Result computed in a parameter corner with known cancellation,
    e.g. 0 < nu < 1e-4 on the generic (nu > 0) code path."""
