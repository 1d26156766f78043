"""Exception hierarchy shared by every nestkit module."""


class NestkitError(Exception):
    """Base class for all library errors."""


class IndexOutOfRange(NestkitError, IndexError):
    pass


class NotGraded(NestkitError, ValueError):
    """An element lacks an up-cover or a down-cover."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class WouldBreakGradedness(NestkitError, ValueError):
    pass


class LevelTooLarge(NestkitError, ValueError):
    pass


class UnequalBlocks(NestkitError, ValueError):
    pass


class NotAPartition(NestkitError, ValueError):
    pass


class GhostInterior(NestkitError, ValueError):
    pass


class NoMatching(NestkitError):
    """No saturating matching exists; on NM input this cannot happen."""


class NoFlow(NestkitError):
    pass


class ConditionUnmet(NestkitError, ValueError):
    pass


class InvalidTuple(NestkitError, ValueError):
    pass


class BudgetExceeded(NestkitError):
    pass


class ExhaustedAttempts(NestkitError):
    """Raised by strict generation; ``poset`` holds the best-so-far result."""

    def __init__(self, message, poset=None):
        super().__init__(message)
        self.poset = poset


class Anomaly(NestkitError):
    """A result that contradicts a proven statement (or an implementation bug)."""


class Unsolved(NestkitError):
    """Every construction method was exhausted without finding a nesting."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
