"""Shared plumbing: vertex ordering and search budgets."""

from __future__ import annotations

DEFAULT_BUDGET = 10**5
EXPONENTIAL_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of budget; the answer is unknown, not "no"."""


def vertex_key(v):
    """Total order on vertex labels: ints, then strings, then tuples."""
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(vertex_key(x) for x in v))
    raise TypeError(f"unsupported vertex label {v!r}")


def sorted_vertices(vs):
    return tuple(sorted(vs, key=vertex_key))


class Budget:
    """Mutable step counter shared by the pieces of one search."""

    def __init__(self, limit: int | None = None):
        self.limit = DEFAULT_BUDGET if limit is None else limit
        if self.limit <= 0:
            raise ValueError("budget must be positive")
        self.used = 0

    def tick(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"search budget of {self.limit} steps exhausted")


def as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)
