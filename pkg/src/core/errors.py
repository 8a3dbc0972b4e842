"""
Domain errors raised by the contest services
"""

from typing import Optional


class ContestError(Exception):
    """Base class for every error the solver raises on purpose"""

    status_code: int = 422

    def __init__(self, message: str, *, field: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.field = field

    def __str__(self) -> str:
        if self.field:
            return f"{self.field}: {self.message}"
        return self.message


class EffortDomainError(ContestError, ValueError):
    """Negative or non-finite effort, or a parameter outside its domain"""


class AsymmetricSpecError(ContestError):
    """A symmetric analysis was requested for a contest that is not symmetric"""

    def __init__(self, message: str = "", *, field: Optional[str] = None):
        guidance = "symmetric analysis needs equal valuations and a shared choice set; use the matrix analysis instead"
        super().__init__(f"{message}; {guidance}" if message else guidance, field=field)


class ConvergenceError(ContestError):
    """An iterative procedure hit its iteration cap"""

    def __init__(self, message: str, *, iterations: int, field: Optional[str] = None):
        super().__init__(message, field=field)
        self.iterations = iterations


class ConfigError(ContestError):
    """Malformed contest configuration document"""

    status_code = 400

    def __init__(self, message: str, *, field: Optional[str] = None, line: Optional[int] = None):
        super().__init__(message, field=field)
        self.line = line

    def __str__(self) -> str:
        location = []
        if self.line is not None:
            location.append(f"line {self.line}")
        if self.field:
            location.append(f"field {self.field}")
        if location:
            return f"{', '.join(location)}: {self.message}"
        return self.message
