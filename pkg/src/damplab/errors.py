"""Exception types. Validation errors carry the measured residual."""


class DamplabError(Exception):
    """Base class for everything raised by this package."""


class ParamOutOfRangeError(DamplabError, ValueError):
    """A channel or schedule parameter is outside its allowed range."""


class ValidationError(DamplabError, ValueError):
    """A matrix failed density-matrix validation."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotHermitianError(ValidationError):
    pass


class NotUnitTraceError(ValidationError):
    pass


class NotPositiveError(ValidationError):
    pass


class NonTracePreservingError(ValidationError):
    """A Kraus set does not satisfy sum_k K_k^dagger K_k = I."""


class MatrixFormatError(DamplabError, ValueError):
    """Malformed JSON matrix input (wrong shape, missing field, bad number)."""


class UnknownStateError(DamplabError, ValueError):
    """A state id passed to the CLI does not resolve to a constructor."""


class ConsistencyError(DamplabError, RuntimeError):
    """An internal cross-check failed while emitting results (exit code 3)."""
