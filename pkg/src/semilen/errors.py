"""Shared exception types.

Every error raised by this package derives from :class:`SemilenError`.
``InputError`` marks malformed caller-supplied data (bad files, bad
arguments); the command line maps it to exit code 2, while findings about
mathematically invalid data (a non-associative table, a subadditivity
violation) map to exit code 1.
"""

__all__ = ["SemilenError", "InputError"]


class SemilenError(Exception):
    """Base class for all errors raised by semilen."""


class InputError(SemilenError):
    """Malformed input: bad file, bad argument, wrong alphabet."""
