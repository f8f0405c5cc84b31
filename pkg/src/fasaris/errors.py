"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration problems exit with 2,
numerical failures with 3.
"""


class ConfigurationError(ValueError):
    """A system configuration or fitting knob is invalid or inconsistent."""


class NumericalError(RuntimeError):
    """A numerical routine produced an out-of-contract result."""


class CsvFormatError(ValueError):
    """A results CSV does not follow the documented schema."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
