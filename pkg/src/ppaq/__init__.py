"""Executable versions of the PPA_q search problems, their reductions and the BIS/SIS algorithms."""

__version__ = "0.1.0"

from .budget import DEFAULT_BUDGET, BudgetExceeded
from .errors import PreconditionError, TotalityError

__all__ = ["__version__", "DEFAULT_BUDGET", "BudgetExceeded", "PreconditionError", "TotalityError"]
