"""Exception types shared across the package."""


class StarfreeError(Exception):
    """Base class for all library errors."""


class RegexSyntaxError(StarfreeError):
    """Regex text does not conform to the grammar; carries a position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at token position {pos})")
        self.pos = pos


class UnknownSymbolError(StarfreeError):
    """A symbol outside the declared alphabet."""


class AlphabetMismatchError(StarfreeError):
    """Two machines over different alphabets were combined."""


class BudgetExceededError(StarfreeError):
    """An enumeration or brute-force pass exceeded its work budget."""


class CapExceededError(StarfreeError):
    """A constructed object (monoid, block alphabet, mask automaton) exceeded
    its configured size cap.  Carries the offending size."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what} size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class StructuralError(StarfreeError):
    """An internal invariant of the star-free algorithm was violated
    (bad E/F set, rank descent failure, excessive recursion depth)."""


class NotFlatError(StarfreeError):
    """An operation that requires a flat component received a non-flat one."""


class ClassRefusalError(StarfreeError):
    """A command was asked to run on a language of the wrong complexity class."""


class FileFormatError(StarfreeError):
    """A DFA/cascade/fixture file does not conform to its format."""
