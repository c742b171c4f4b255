"""Enumeration budget shared by every brute-force routine.

A budget is a cap on elementary steps.  The default is 10**7 and can be
overridden with the TFNP_BUDGET environment variable or per call.
"""

import os

DEFAULT_BUDGET = 10**7

__all__ = ["DEFAULT_BUDGET", "BudgetExceeded", "Meter", "resolve_budget"]


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its step cap."""


def resolve_budget(budget=None):
    if budget is not None:
        return int(budget)
    env = os.environ.get("TFNP_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


class Meter:
    """Counts steps against a budget; raises instead of truncating."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, budget=None, what="enumeration"):
        self.limit = resolve_budget(budget)
        self.used = 0
        self.what = what

    def tick(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"{self.what}: step budget {self.limit} exceeded")

    def require(self, n):
        """Fail fast when a known up-front cost does not fit."""
        if self.used + n > self.limit:
            raise BudgetExceeded(f"{self.what}: needs {n} steps, budget is {self.limit}")
