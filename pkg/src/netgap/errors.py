"""Shared exception types."""


class NetgapError(Exception):
    """Base class for all workbench errors."""


class SizeLimitExceeded(NetgapError):
    """An enumeration or construction would exceed its configured limit."""


class BudgetExhausted(NetgapError):
    """A search ran out of its node budget before reaching a verdict.

    Distinct from a negative verdict: callers must treat this as "unknown".
    """

    def __init__(self, message: str, nodes_used: int = 0):
        super().__init__(message)
        self.nodes_used = nodes_used


class UnsolvableNetwork(NetgapError):
    """The network fails the cut criterion; minimality is undefined for it."""
