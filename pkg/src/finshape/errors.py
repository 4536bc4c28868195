"""Exception types shared across the package.

``PropertyCheckError`` and its subclasses mark failures of checks that are
mathematically guaranteed to hold; seeing one means the library has a bug,
not that the input was bad.  All other errors report bad input or guarded
resource limits.
"""


class FinshapeError(Exception):
    """Base class for all errors raised by this package."""


class NotATopology(FinshapeError):
    """The presented family of open sets is not a topology."""


class DuplicateLabel(FinshapeError):
    """A point name occurs more than once."""


class IndexOutOfRange(FinshapeError):
    """A point index is outside 0..n-1."""


class InvalidPartition(FinshapeError):
    """Blocks are empty, overlapping, or do not cover all points."""


class NotT0(FinshapeError):
    """Operation requires a T0 space."""

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class NotContinuous(FinshapeError):
    """A point function is not order preserving."""

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class PropertyCheckError(FinshapeError):
    """An internal consistency check failed; indicates a library bug."""


class QuotientMismatch(PropertyCheckError):
    """Closure-formula quotient preorder disagrees with the openness oracle."""


class NotConstantOnClasses(PropertyCheckError):
    """A map that must be constant on quotient classes is not."""


class OracleTooLarge(FinshapeError):
    """Definition-level relation oracle refused: enumeration too big."""


class SearchSpaceTooLarge(FinshapeError):
    """Exhaustive map enumeration refused: too many candidate maps."""


class UnsupportedPrime(FinshapeError):
    """Modular coefficients requested for a non-prime modulus."""


class WindowTooLarge(FinshapeError):
    """Rank window longer than the tower provides."""


class ResolutionTooSmall(FinshapeError):
    """Cover resolution below the minimum for the model."""


class BondNotWellDefined(FinshapeError):
    """A finer cover element lies in no coarser element."""


class IsolatedTwin(FinshapeError):
    """A doubled vertex is isolated in the base complex."""


class ParseError(FinshapeError):
    """Malformed space, complex, map, or manifest file."""

    def __init__(self, message, source=None, line=None):
        loc = ""
        if source is not None:
            loc = f"{source}:" if line is None else f"{source}:{line}:"
        super().__init__(f"{loc} {message}" if loc else message)
        self.source = source
        self.line = line
