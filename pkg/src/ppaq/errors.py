"""Exception types shared across modules."""

from .budget import BudgetExceeded
from .problems import TotalityError

__all__ = ["PreconditionError", "BudgetExceeded", "TotalityError"]


class PreconditionError(ValueError):
    """An operation was called outside its stated premises."""
