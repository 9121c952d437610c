"""Exception types shared by every module.

Absence of a universal object is a value, not an error; only structural
mistakes and budget overruns raise.
"""


class EnrichedKernelError(Exception):
    """Base class for all library errors."""


class BudgetExceeded(EnrichedKernelError):
    """A search passed its step budget."""


class InvalidStructure(EnrichedKernelError):
    """A structure failed its construction-time invariants."""


class UnknownArrow(EnrichedKernelError):
    pass


class UnknownObject(EnrichedKernelError):
    pass


class ParallelMismatch(EnrichedKernelError):
    """Two functors were expected to share source and target."""


class CodomainMismatch(EnrichedKernelError):
    pass


class ShapeMismatch(EnrichedKernelError):
    """Domains/codomains of supplied data do not compose."""


class LevelMismatch(EnrichedKernelError):
    """Tower operands sit at incompatible levels."""


class DictionaryMismatch(EnrichedKernelError):
    """A fragment's dictionary disagrees with its indexing category."""


class CongruenceFailure(EnrichedKernelError):
    """A candidate arrow relation is not composition-compatible."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapabilityMissing(EnrichedKernelError):
    """A tensor structure lacks an optional capability an operation needs."""


class NotClosed(EnrichedKernelError):
    """A fragment's functor list is not closed under composition."""


class PreconditionFailed(EnrichedKernelError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoLimit(EnrichedKernelError):
    pass


class LiftMissing(EnrichedKernelError):
    pass


class UNotIso(EnrichedKernelError):
    """The colimit-tensor comparison arrow is not invertible."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class TauNotIso(UNotIso):
    """The product-flavoured comparison arrow is not invertible."""


class FlagMissing(EnrichedKernelError):
    """A construction requires inclusion/monic flags that are false."""


class Absent(EnrichedKernelError):
    """A required universal construction does not exist.

    Raised only where an operation cannot return absence as a value;
    carries a structured trace of what was missing.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = tuple(trace or ())


class LoadError(EnrichedKernelError):
    """A workspace file failed to parse or validate."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class UnknownCommand(EnrichedKernelError):
    pass


class Budget:
    """Mutable step counter; every exhaustive search spends from one."""

    __slots__ = ("limit", "steps")

    def __init__(self, limit=10_000_000):
        self.limit = int(limit)
        self.steps = 0

    def spend(self, n=1):
        self.steps += n
        if self.steps > self.limit:
            raise BudgetExceeded(
                "search exceeded %d steps" % self.limit)

    def remaining(self):
        return max(0, self.limit - self.steps)


def as_budget(budget):
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)
