"""Exception types shared across the engine."""


class PuzzleError(Exception):
    """Base class for all twistpuzzle errors."""


class CompositionError(PuzzleError):
    """Group elements over different moduli or site sets were combined."""


class DivisorError(PuzzleError):
    """A projection modulus was requested that does not divide m."""


class ClosureCapExceeded(PuzzleError):
    """A closure computation would exceed its element cap."""


class GraphFormatError(PuzzleError, ValueError):
    """A twist graph document or constructor argument is invalid."""


class StateFormatError(PuzzleError, ValueError):
    """A puzzle state document is malformed or inconsistent with its graph."""


class IllegalMoveError(PuzzleError):
    """A move was applied whose starting vertex is not the blank."""


class PathError(PuzzleError):
    """A path is not edge-contiguous or is not closed where required."""


class CycleConditionError(PuzzleError):
    """An edge-weight vector fails the closed 1-cycle condition."""


class UndecidedError(PuzzleError):
    """Classification fell back to enumeration and exceeded its state cap."""
