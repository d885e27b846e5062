"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes (see cli.py).
"""


class DecountError(Exception):
    """Base class for all package errors."""


class InputFormatError(DecountError):
    """Malformed input: bad edge lists, self-loops, rejected duplicates."""


class CapExceededError(DecountError):
    """A size cap was exceeded (pattern vertices, source count, ...)."""


class UnclassifiablePatternError(CapExceededError):
    """An orientation is neither width-1 nor cycle-reducible within the
    supported cycle lengths, and the brute-force fallback was not enabled.
    Subclasses CapExceededError: the framework's capability is exceeded."""


class VerificationError(DecountError):
    """A cross-check against a reference oracle failed."""


class IntegrityError(DecountError):
    """Internal consistency violation: a division correction that should be
    exact left a remainder, a homomorphism table entry is missing, or a
    certificate failed re-validation.  Always indicates a bug, never bad
    user input."""
