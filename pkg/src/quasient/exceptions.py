"""Custom exceptions for quasient.

Error contract:
    All QuasientError subclasses emit { code, message, hint }

Exit codes (CLI):
    0 = ok
    1 = unexpected error (I/O failure, crash)
    2 = invalid input or configuration
    3 = numerical or physicality failure
    4 = size cap exceeded
    130 = interrupted (KeyboardInterrupt)
"""

from __future__ import annotations

from typing import Any

# Exit code constants
EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_SIZE = 4
EXIT_INTERRUPTED = 130


class QuasientError(Exception):
    """Base exception for quasient."""

    error_code: str = "RUNTIME_UNKNOWN"
    hint: str | None = None
    exit_code: int = EXIT_RUNTIME

    def __init__(self, message: str, *, hint: str | None = None):
        super().__init__(message)
        if hint is not None:
            self.hint = hint

    def to_dict(self) -> dict[str, Any]:
        """Machine-readable form used by the CLI ``--json`` error output."""
        return {
            "code": self.error_code,
            "message": str(self),
            "hint": self.hint,
            "exit_code": self.exit_code,
        }


# =============================================================================
# Input and configuration errors
# =============================================================================


class ConfigError(QuasientError):
    """Invalid run configuration or config file."""

    error_code = "CONFIG_INVALID"
    exit_code = EXIT_CONFIG


class InputError(QuasientError):
    """Invalid argument to a library operation."""

    error_code = "INPUT_INVALID"
    exit_code = EXIT_CONFIG


class ModelError(InputError):
    """Model unsupported by the requested construction."""

    error_code = "INPUT_MODEL"


class ExcitationSpecError(InputError):
    """Duplicate or out-of-range quasiparticle mode indices."""

    error_code = "INPUT_EXCITATION"


# =============================================================================
# Numerical errors
# =============================================================================


class NumericalError(QuasientError):
    """A numerical routine produced an unusable result."""

    error_code = "NUMERICAL"
    exit_code = EXIT_NUMERICAL


class PhysicalityError(NumericalError):
    """Correlation matrix eigenvalue outside [-1, 1] beyond tolerance."""

    error_code = "NUMERICAL_PHYSICALITY"
    hint = "Check that the quadratic form and mode basis come from the same model."

    def __init__(self, message: str, violation: float = 0.0, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.violation = violation


class ConvergenceError(NumericalError):
    """Eigensolver or fixed-point iteration did not converge."""

    error_code = "NUMERICAL_CONVERGENCE"

    def __init__(self, message: str, residuals: list[float] | None = None, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.residuals = residuals or []


class NonInjectiveError(NumericalError):
    """Leading transfer-matrix eigenvalue is degenerate."""

    error_code = "NUMERICAL_INJECTIVITY"
    hint = "Draw a new tensor or increase the bond dimension."

    def __init__(self, message: str, gap: float = 0.0, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.gap = gap


class NotPositiveDefiniteError(NumericalError):
    """Fixed point is not positive definite."""

    error_code = "NUMERICAL_NOT_PD"

    def __init__(self, message: str, smallest_eigenvalue: float = 0.0, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.smallest_eigenvalue = smallest_eigenvalue


class DegenerateInputError(NumericalError):
    """Excitation tensor lies entirely in the gauge orbit of the ground state."""

    error_code = "NUMERICAL_DEGENERATE"
    hint = "B projects to zero under the left-gauge condition; use a generic tensor."


class UndefinedCorrelationLengthError(NumericalError):
    """Correlation length requested for a gapless model."""

    error_code = "NUMERICAL_GAPLESS"
    hint = "The bulk dispersion closes; the chain is critical."


# =============================================================================
# Resource errors
# =============================================================================


class SizeCapError(QuasientError):
    """Requested system exceeds a configured size cap."""

    error_code = "SIZE_CAP"
    exit_code = EXIT_SIZE

    def __init__(self, message: str, size: int = 0, cap: int = 0, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.size = size
        self.cap = cap
