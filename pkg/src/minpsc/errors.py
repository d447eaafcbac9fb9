"""Exception hierarchy shared by all solver modules."""


class MinPSCError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MinPSCError, ValueError):
    pass


class InvalidInstance(MinPSCError, ValueError):
    pass


class DisconnectedSelection(MinPSCError, ValueError):
    """The chosen edges do not connect all vertices."""


class GuardExceeded(MinPSCError):
    """An exponential routine was asked to run beyond its size guard."""


class TooManyColors(GuardExceeded):
    pass


class TooLarge(GuardExceeded):
    pass


# validate_lower_bounds names its guard error this way
InstanceTooLarge = TooLarge


class CorruptTable(MinPSCError, RuntimeError):
    """Replaying the DP table did not reproduce a stored value."""


class PathTooShort(MinPSCError, ValueError):
    pass


class NotACycle(MinPSCError, ValueError):
    pass


class InconsistentLog(MinPSCError, ValueError):
    pass


class UncoveredElement(MinPSCError, ValueError):
    pass


class InvalidParams(MinPSCError, ValueError):
    pass


class DisconnectedResult(MinPSCError):
    """A random generator failed to produce a connected graph."""


class IndexOutOfRange(MinPSCError, IndexError):
    pass
