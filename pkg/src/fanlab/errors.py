"""Shared exception types; the CLI maps these to exit codes."""


class FanlabError(Exception):
    """Base class for all package errors."""


class OrdinalParseError(FanlabError, ValueError):
    """Malformed or non-canonical ordinal literal."""


class GuardExceeded(FanlabError):
    """A search-size guard was exceeded; the instance is too large for exact solving."""


class ClosureError(FanlabError):
    """A sample set is not closed under the maps a construction requires."""


class ValidationError(FanlabError, ValueError):
    """Structured data (staircase, table, space file) violates its invariants."""


class DomainError(FanlabError, ValueError):
    """Arguments lie outside an operation's declared domain."""
