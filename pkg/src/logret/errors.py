"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LogretError(Exception):
    """Base class for all errors raised by logret."""


class ConfigError(LogretError, ValueError):
    """Invalid configuration value.  ``field`` names the offending setting when known."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class EmptyInputError(LogretError, ValueError):
    pass


class UndefinedRatioError(LogretError, ArithmeticError):
    """A ratio whose denominator is zero (empty baseline, no satisfied queries, ...)."""

    def __init__(self, message: str, window_days: int | None = None):
        super().__init__(message)
        self.window_days = window_days


class FormatError(LogretError, ValueError):
    pass


class ParseError(FormatError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
