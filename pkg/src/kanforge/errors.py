"""Exception types and the enumeration budget."""
from __future__ import annotations

import contextlib
import contextvars
import os

DEFAULT_BUDGET = 10**6


class KanforgeError(Exception):
    """Base class for library errors."""


class StructuralError(KanforgeError):
    """Malformed input: wrong arity, out-of-range index, missing table entry."""


class DimensionError(KanforgeError):
    """A requested dimension exceeds the truncation of the data."""


class BudgetExceeded(KanforgeError):
    """An enumeration would produce more elements than the budget allows."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"budget of {limit} elements exceeded while enumerating {what}")
        self.what = what
        self.limit = limit


class ClassificationError(KanforgeError):
    """A precondition on the n-groupoid level of an input does not hold."""


_budget: contextvars.ContextVar[int | None] = contextvars.ContextVar("kanforge_budget", default=None)


def get_budget() -> int:
    value = _budget.get()
    if value is not None:
        return value
    env = os.environ.get("KANFORGE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise StructuralError(f"KANFORGE_BUDGET is not an integer: {env!r}") from exc
    return DEFAULT_BUDGET


@contextlib.contextmanager
def budget(limit: int):
    """Temporarily override the element budget."""
    token = _budget.set(int(limit))
    try:
        yield
    finally:
        _budget.reset(token)


class Counter:
    """Counts produced elements and raises once the budget is passed."""

    __slots__ = ("what", "limit", "count")

    def __init__(self, what: str):
        self.what = what
        self.limit = get_budget()
        self.count = 0

    def tick(self, n: int = 1) -> None:
        self.count += n
        if self.count > self.limit:
            raise BudgetExceeded(self.what, self.limit)
