"""Exception hierarchy.

Every computational failure carries a short ``status`` string. Sweeps store
that string in the per-point status column instead of aborting.
"""


class RingQEDError(Exception):
    status = "error"


class ValidationError(RingQEDError, ValueError):
    """Input violates a documented invariant."""

    status = "invalid-input"


class ConfigParseError(ValidationError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ComputationError(RingQEDError, RuntimeError):
    status = "computation-failure"


class QuadratureError(ComputationError):
    status = "quadrature-nonconvergence"

    def __init__(self, message, value=None, error=None, n_eval=None):
        super().__init__(message)
        self.value = value
        self.error = error
        self.n_eval = n_eval


class DegenerateTransmissionError(ComputationError):
    status = "degenerate-transmission"


class SingularSystemError(ComputationError):
    status = "singular-system"


class ZeroOccupationError(ComputationError):
    status = "zero-occupation"


class StepSizeError(ComputationError):
    status = "step-size-rejected"


class ResolutionError(ValidationError):
    status = "insufficient-resolution"


class RecurrenceError(ComputationError):
    status = "recurrence"


class OracleConvergenceError(ComputationError):
    status = "oracle-nonconvergence"
