"""Exception types shared across the package."""

from __future__ import annotations


class CodeError(Exception):
    """Base class for every error raised by sdcodes."""


class DimensionMismatch(CodeError, ValueError):
    """Operands have incompatible lengths or shapes."""


class PreconditionError(CodeError, ValueError):
    """An operation was called on input outside its domain."""


class BudgetExceeded(CodeError, RuntimeError):
    """An exhaustive search would exceed the configured budget."""


class ParseError(CodeError, ValueError):
    """Malformed code file or support list."""


class HeaderError(ParseError):
    pass


class RowLengthError(ParseError):
    pass


class CharacterError(ParseError):
    pass
