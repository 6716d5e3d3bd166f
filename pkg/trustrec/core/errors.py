from typing import Optional


class TrustRecError(Exception):
    """Base class for every error raised by trustrec."""

    pass


class ParseError(TrustRecError, ValueError):
    """Raised when a trust or ratings line cannot be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None, line: Optional[str] = None):
        self.line_number = line_number
        self.line = line
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ConfigurationError(TrustRecError, ValueError):
    """Raised for invalid similarity or run configurations."""

    pass


class ShapeError(TrustRecError, ValueError):
    """Raised when matrix or vector shapes do not line up."""

    pass


class SingularSystemError(TrustRecError, ArithmeticError):
    """Raised when I - alpha*A cannot be inverted."""

    pass


class EvaluationError(TrustRecError, RuntimeError):
    """Raised when an evaluation cannot run, e.g. the cold-start split is empty."""

    pass
