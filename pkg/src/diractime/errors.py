"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Bad input: wrong shape, out-of-range parameter, violated precondition."""


class LocalizationError(ValidationError):
    """Field is not negligible at the grid boundary."""


class SingularProjectorError(ValidationError):
    """Energy projector requested at a zero-energy node."""


class ConfigError(ValidationError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
