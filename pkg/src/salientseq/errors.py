"""Exception types shared across the package."""


class SalientSeqError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SalientSeqError):
    """An input violates a documented precondition or invariant."""


class ParseError(ValidationError):
    """A file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapacityError(SalientSeqError):
    """A requested computation exceeds a hard size limit."""


class NonFiniteError(SalientSeqError):
    """A numeric operation produced NaN or infinity."""


class TrainingError(SalientSeqError):
    """Training diverged or could not complete."""
