"""Exception types shared across the package.

The CLI maps these onto process exit codes: configuration problems exit
with 2, numeric failures with 3, and I/O failures (plain OSError) with 4.
"""


class ConfigError(ValueError):
    """A configuration value or file is invalid."""


class DomainError(ValueError):
    """An operand is outside the physical or mathematical domain of an operation."""


class NumericError(ArithmeticError):
    """A computation produced a non-finite result (overflow or NaN)."""
