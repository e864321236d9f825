"""
SnCharLab Budget System

Every exhaustive experiment is bounded by a configured largest n.
Services declare the budget they need with @require_budget, which checks
the size argument before the body runs.
"""

import inspect
from enum import Enum
from functools import wraps
from typing import Callable, Optional

from core.config import LabConfig


class Budget(Enum):
    """
    Configurable size limits, keyed by their config.json name.
    """

    LEMMA21_MAX_N = "lemma21_max_n"
    LEMMA22_MAX_N = "lemma22_max_n"
    EXACT_TABLE_MAX_N = "exact_table_max_n"
    MOD_TABLE_MAX_N = "mod_table_max_n"
    EXACT_DENSITY_MAX_N = "exact_density_max_n"
    ZEROS_MAX_N = "zeros_max_n"
    CERTIFICATE_MAX_N = "certificate_max_n"
    MOMENT_MAX_N = "moment_max_n"
    ALL_PARTS_MAX_N = "all_parts_max_n"


class BudgetExceededError(RuntimeError):
    """
    Raised when a request is larger than its configured budget, or when a
    resource cap is hit part way through a computation.

    Attributes:
        budget: Name of the budget or cap that was exceeded
        requested: Requested size (n, or bytes for memory caps)
        limit: Configured limit
        completed: Units of work finished before aborting
        total: Units of work that were planned
    """

    def __init__(
        self,
        budget: str,
        requested: int,
        limit: int,
        completed: int = 0,
        total: int = 0,
    ):
        self.budget = budget
        self.requested = requested
        self.limit = limit
        self.completed = completed
        self.total = total
        message = f"Budget exceeded: {budget} requested {requested}, limit {limit}"
        if total:
            message += f" (completed {completed}/{total})"
        super().__init__(message)


def within_budget(config: LabConfig, budget: Budget, n: int) -> bool:
    """
    Check if n fits a budget.

    Args:
        config: Active configuration
        budget: Budget to check

    Returns:
        True if n is at most the configured limit
    """
    return n <= config.budget(budget.value)


def check_budget(config: LabConfig, budget: Budget, n: int) -> None:
    """
    Raise if n exceeds a budget.

    Raises:
        BudgetExceededError: If n is above the configured limit
    """
    if not within_budget(config, budget, n):
        raise BudgetExceededError(budget.value, n, config.budget(budget.value))


def require_budget(budget: Budget, argument: str = "n") -> Callable:
    """
    Decorator to bound a service method by a configured budget.

    The decorated method must belong to an object with a `config`
    attribute and take the size as `argument`.

    Usage:
        @require_budget(Budget.LEMMA22_MAX_N)
        def verify_lemma22(self, n: int) -> int:
            ...

    Args:
        budget: Budget to enforce
        argument: Name of the size parameter

    Raises:
        BudgetExceededError: If the size exceeds the budget
    """
    def decorator(func: Callable) -> Callable:
        signature = inspect.signature(func)

        @wraps(func)
        def wrapper(self, *args, **kwargs):
            bound = signature.bind(self, *args, **kwargs)
            bound.apply_defaults()
            size: Optional[int] = bound.arguments.get(argument)
            if size is not None:
                check_budget(self.config, budget, size)
            return func(self, *args, **kwargs)

        return wrapper

    return decorator
