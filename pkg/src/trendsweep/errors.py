"""Exception hierarchy shared across the package.

Error messages start with a short kebab-case code (e.g. ``insufficient-points:``)
so callers and tests can match on a stable token while the rest of the message
stays free-form. The CLI maps each class to a distinct exit code.
"""

from __future__ import annotations


class TrendsweepError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ConfigError(TrendsweepError):
    """Invalid configuration, flags, or credentials (CLI exit code 2)."""

    exit_code = 2


class DataError(TrendsweepError):
    """Missing, malformed, or inconsistent data (CLI exit code 3)."""

    exit_code = 3


class DomainError(TrendsweepError):
    """Numerical or domain precondition violated (CLI exit code 4)."""

    exit_code = 4
