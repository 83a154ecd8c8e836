"""Exception hierarchy.

Every error raised by the engine derives from :class:`CurrentRepError`, which
the command-line front end maps to exit code 3 (unsupported configuration).
"""


class CurrentRepError(Exception):
    """Base class for all engine errors."""


class UnsupportedType(CurrentRepError):
    pass


class StructureConstantsUnavailable(CurrentRepError):
    pass


class TooLarge(CurrentRepError):
    """A size guard (root count, module dimension, search depth) was exceeded."""


class NotAPartition(CurrentRepError):
    pass


class ClosureViolation(CurrentRepError):
    """A root-set closure property fails; ``witness`` holds the offending pair."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotParabolic(CurrentRepError):
    pass


class DuplicatePoint(CurrentRepError):
    pass


class MismatchedAlgebra(CurrentRepError):
    pass


class NonDominant(CurrentRepError):
    pass


class ReducibleParameters(CurrentRepError):
    pass


class OutOfWindow(CurrentRepError):
    """A windowed (infinite) module was queried outside its materialized window."""


class RepeatedPoint(CurrentRepError):
    pass


class Inadmissible(CurrentRepError):
    pass


class UntaggedFactor(CurrentRepError):
    pass


class HeightMismatch(CurrentRepError):
    pass


class WindowTooSmall(CurrentRepError):
    pass


class NotExact(CurrentRepError):
    pass


class DimensionMismatch(CurrentRepError):
    pass


class DegenerateLeviModule(CurrentRepError):
    """Levi module weights do not lie in a single coset of the Levi root lattice."""
