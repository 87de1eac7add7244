"""Exception types shared across the package.

The CLI maps :class:`UsageError` to exit code 1 and :class:`CorpusError`
(plus any ``OSError``) to exit code 2.
"""


class UsageError(ValueError):
    """Invalid parameters or an impossible request (bad k, too few docs)."""


class CorpusError(OSError):
    """A corpus directory could not be turned into documents."""


class NoPairsError(UsageError):
    """A document has nothing to be compared against."""
