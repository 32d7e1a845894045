"""Exception hierarchy shared by every module."""


class SuperSchurError(Exception):
    """Base class for all engine errors."""


class ContainmentViolation(SuperSchurError, ValueError):
    pass


class InvalidPartition(SuperSchurError, ValueError):
    pass


class EmptyShape(SuperSchurError, ValueError):
    pass


class DisconnectedShape(SuperSchurError, ValueError):
    pass


class OutOfRangeLetter(SuperSchurError, ValueError):
    pass


class SamePrimedness(SuperSchurError, ValueError):
    pass


class NonSquare(SuperSchurError, ValueError):
    pass


class UnassignedVariable(SuperSchurError, KeyError):
    pass


class ForeignFamily(SuperSchurError, ValueError):
    pass


class ContentMismatch(SuperSchurError, ValueError):
    pass


class NotProper(SuperSchurError, ValueError):
    pass


class MalformedPath(SuperSchurError, ValueError):
    pass


class InvalidTableau(SuperSchurError, ValueError):
    pass


class TooLarge(SuperSchurError, RuntimeError):
    """An enumeration would exceed the configured resource guard."""
