"""Exception hierarchy shared by every module of the package."""


class QuiverError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(QuiverError, ValueError):
    pass


class NotContained(QuiverError, ValueError):
    pass


class Disconnected(QuiverError, ValueError):
    pass


class InvalidShape(QuiverError, ValueError):
    """Self-loops, multi-edges, dangling tails and similar shape defects."""


class ShapeMismatch(QuiverError, ValueError):
    def __init__(self, arrow, message=""):
        self.arrow = arrow
        super().__init__(message or f"matrix on arrow {arrow!r} has the wrong shape")


class BadTailExtension(QuiverError, ValueError):
    pass


class NotAJourney(QuiverError, ValueError):
    pass


class NotARay(QuiverError, ValueError):
    pass


class WrongShape(QuiverError, ValueError):
    pass


class InconsistentAddress(QuiverError, RuntimeError):
    pass


class NotEquioriented(QuiverError, ValueError):
    pass


class NotATail(QuiverError, ValueError):
    pass


class CoreTooLarge(QuiverError, ValueError):
    pass


class InfiniteSupport(QuiverError, ValueError):
    pass


class NoWitnessFound(QuiverError, LookupError):
    pass


class ReprFileError(QuiverError):
    """Raised by the file parser; ``line`` and ``key`` locate the problem when known."""

    def __init__(self, message, line=None, key=None):
        self.line = line
        self.key = key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class ReprSyntaxError(ReprFileError):
    pass


class ReprValidationError(ReprFileError):
    pass
