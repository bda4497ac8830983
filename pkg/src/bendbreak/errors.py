"""Exception hierarchy shared by all modules.

Usage errors (bad literals, bad arguments) derive from ``UsageError``;
failures of a well-formed computation derive from ``ComputationError``.
The CLI maps the two families to distinct exit codes.
"""


class BendBreakError(Exception):
    pass


class UsageError(BendBreakError, ValueError):
    pass


class ComputationError(BendBreakError, ArithmeticError):
    pass


class ClassFormatError(UsageError):
    """Malformed class literal or arity mismatch."""


class ModelMismatchError(UsageError):
    """Two classes from surfaces with a different number of blown-up points."""


class PreconditionError(UsageError):
    """An operation was called outside its documented domain."""


class UnsupportedShapeError(UsageError):
    """Argument combination that selects no expansion."""


class SeedFileError(UsageError):
    """Malformed seed file or conflicting duplicate entries."""


class CacheFileError(UsageError):
    """Malformed cache file."""


class DivisibilityError(ComputationError):
    """A boundary sum was not divisible by the expected factor."""


class NegativeCountError(ComputationError):
    """A count came out negative."""


class MissingSeedError(ComputationError):
    """The recursion reached a base class for which no seed is known."""


class NotRepresentableError(ComputationError):
    """The class has no irreducible rational member, so no count is defined."""


class CacheConflictError(ComputationError):
    """A cache key was about to be rebound to a different value."""
