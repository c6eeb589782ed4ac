"""Exception types shared across the library.

Negative results that are part of an operation's contract (a pattern
not found, a refused linkage request) are returned as values, not
raised; these exceptions mark contract violations, resource guards, or
internal bug signals.
"""


class TuranregError(Exception):
    """Base class for all library errors."""


class ParseError(TuranregError):
    """Malformed input file or serialized object."""


class PreconditionViolated(TuranregError):
    """An operation was called outside its stated precondition."""


class EmptyGraphError(TuranregError):
    """A degree statistic was requested on an empty graph or one with an isolated vertex."""


class TooLarge(TuranregError):
    """Exact enumeration would exceed the configured guard."""


class CeilingHit(TuranregError):
    """Backtracking search exhausted its node budget; the outcome is inconclusive.

    Never treat this as "not found": callers must surface the tri-state.
    """


class InternalInvariantBroken(TuranregError):
    """A step the underlying argument guarantees failed; treat as a bug signal."""


class MemberNotFound(TuranregError):
    """The given embedding is not a member of the family."""


class NotHeavy(TuranregError):
    """The given copy is not heavy, so a minimal heavy sub-copy does not exist."""


class ExtensionFailed(TuranregError):
    """A robust re-embedding walk ran out of fresh vertices despite a valid budget."""


class AssemblyFailed(TuranregError):
    """Greedy assembly of a subdivision pattern could not be completed."""


class DegenerateTree(TuranregError):
    """Tree shape makes the requested quantity undefined."""


class VerificationFailed(TuranregError):
    """A claimed balance interval failed endpoint verification.

    Carries the failing endpoint and the violating vertex subset.
    """

    def __init__(self, message, alpha=None, failing_set=None):
        super().__init__(message)
        self.alpha = alpha
        self.failing_set = failing_set


class NotPrime(TuranregError):
    """The construction field size must be prime."""
