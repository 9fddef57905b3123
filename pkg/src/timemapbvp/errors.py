"""Semantic exception hierarchy for the package.

Every failure mode that callers may want to branch on gets its own class;
plain ValueError/RuntimeError are reserved for programming errors.
"""


class TimeMapBVPError(Exception):
    """Base class for all package errors."""


class FamilyError(TimeMapBVPError):
    """Invalid or inconsistent family parameters (e.g. p <= 0)."""


class DomainError(TimeMapBVPError):
    """Argument outside the mathematical domain of an operation."""


class AccuracyError(TimeMapBVPError):
    """A quadrature or iteration failed to reach the requested tolerance.

    Carries the best available estimate so callers can degrade gracefully.
    """

    def __init__(self, message, best=None, est_error=None):
        super().__init__(message)
        self.best = best
        self.est_error = est_error


class RefinementError(TimeMapBVPError):
    """A sampling grid was too coarse to resolve the requested feature."""


class ClassificationError(TimeMapBVPError):
    """A profile or diagram does not fit any known configuration."""


class UnsupportedFamilyError(TimeMapBVPError):
    """The operation needs analytic data the family does not carry."""


class ConfigError(TimeMapBVPError):
    """Malformed run configuration."""
