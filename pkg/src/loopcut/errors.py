"""Exception hierarchy shared by every loopcut module."""


class LoopCutError(Exception):
    """Base class for all loopcut errors."""


class ParseError(LoopCutError):
    """A network file could not be parsed."""


class ValidationError(LoopCutError):
    """A network violates one of its structural invariants."""


class UnknownNodeError(LoopCutError, KeyError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"unknown node id {node!r}")

    def __str__(self):
        return self.args[0]


class NoEligibleNodeError(LoopCutError):
    """Greedy selection found no usable candidate on a graph that still has loops."""

    def __init__(self, residual, message="no eligible node"):
        self.residual = residual
        super().__init__(f"{message} (residual graph has {len(residual)} nodes)")


class InvalidCutsetError(LoopCutError):
    def __init__(self, message, members=(), seed=None):
        self.members = tuple(members)
        self.seed = seed
        super().__init__(message)


class CycleBudgetExceeded(LoopCutError):
    """Loop enumeration hit its cycle cap."""


class BudgetExceeded(LoopCutError):
    """The exact search ran out of node expansions.

    ``best`` holds the best valid (not necessarily minimum) cutset found.
    """

    def __init__(self, best):
        self.best = best
        super().__init__(f"search budget exceeded; best cutset has size {len(best.members)}")
