"""Exception types raised across the package."""


class ShapeMismatch(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class ZeroSignal(ValueError):
    """A nonzero signal was required."""


class TooLarge(ValueError):
    """An exhaustive enumeration would blow up."""


class EmptyBand(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


class ConditionViolated(ValueError):
    pass


class TooSmall(ValueError):
    pass


class MalformedFile(ValueError):
    pass


class UnsupportedMaxval(MalformedFile):
    pass
