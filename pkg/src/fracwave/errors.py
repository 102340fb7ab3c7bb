"""Exception hierarchy for the fracwave toolkit."""


class FracwaveError(Exception):
    """Base class for all toolkit errors."""


class DomainError(FracwaveError, ValueError):
    """A parameter violates a stated physical or mathematical constraint."""


class ShapeError(FracwaveError, ValueError):
    """Fields or grids that must match do not."""


class ValidationError(FracwaveError, ValueError):
    """Non-finite or otherwise malformed numeric data."""


class ConvergenceError(FracwaveError):
    """Iterative root search failed to converge.

    Carries the last iterate and residual for diagnosis.
    """

    def __init__(self, message, last_iterate=None, residual=None, omega=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual
        self.omega = omega


class BranchError(FracwaveError):
    """Root search landed on the non-attenuating (growing) branch."""


class ConfigurationError(FracwaveError, ValueError):
    """Run configuration is inconsistent (CFL violation, bad window, ...)."""


class InstabilityError(FracwaveError):
    """Time stepping blew up (NaN/Inf detected)."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class TransientError(FracwaveError):
    """Signal has not reached steady state where a steady state is required."""


class InsufficientDataError(FracwaveError, ValueError):
    """Too few data points for the requested fit."""


class IncompleteMediumError(FracwaveError, ValueError):
    """Medium entry lacks a required field (e.g. exponent-only table rows)."""


class MediaFileError(FracwaveError, ValueError):
    """Media table file failed to parse or validate.

    ``line`` is the 1-based line number of the offending row, when known.
    """

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
