"""Shared exception types.

The command line maps these onto distinct exit codes, so library code
should raise the most specific one that applies.
"""


class DeluneError(Exception):
    """Base class for everything raised deliberately by this package."""


class InvalidDiagram(DeluneError, ValueError):
    """Input data fails validation (bad syntax, edge bookkeeping, genus)."""


class CapExceeded(DeluneError):
    """A size or budget cap was hit before the computation finished."""


class RewriteError(DeluneError):
    """A rewrite post-condition check failed; the result was discarded."""
