"""Search budgets with environment-provided defaults."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

from .errors import InputError

ENV_MAX_NODES = "HEREDITEX_MAX_NODES"
ENV_TIME_LIMIT = "HEREDITEX_TIME_LIMIT"


def _env_number(name, cast):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = cast(raw)
    except ValueError as exc:
        raise InputError(f"{name}={raw!r} is not a number") from exc
    if value <= 0:
        raise InputError(f"{name} must be positive, got {raw!r}")
    return value


@dataclass(frozen=True)
class SearchBudget:
    """Caps for a branch-and-bound or enumeration run.

    ``None`` means unlimited. ``symmetry`` toggles lex-leader pruning in
    the extremal solvers; results are identical either way, only the
    node count changes.
    """

    max_nodes: int | None = None
    time_limit: float | None = None
    symmetry: bool = True

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise InputError(f"max_nodes must be positive, got {self.max_nodes}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise InputError(f"time_limit must be positive, got {self.time_limit}")

    @classmethod
    def from_env(cls, symmetry: bool = True) -> "SearchBudget":
        return cls(
            max_nodes=_env_number(ENV_MAX_NODES, int),
            time_limit=_env_number(ENV_TIME_LIMIT, float),
            symmetry=symmetry,
        )

    def meter(self) -> "BudgetMeter":
        return BudgetMeter(self)


class BudgetMeter:
    """Mutable node/time counter for a single run."""

    __slots__ = ("budget", "nodes", "_deadline", "exhausted")

    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self._deadline = (
            None if budget.time_limit is None else time.monotonic() + budget.time_limit
        )
        self.exhausted = False

    def tick(self) -> bool:
        """Count one node; return True once the budget is spent."""
        self.nodes += 1
        cap = self.budget.max_nodes
        if cap is not None and self.nodes > cap:
            self.exhausted = True
        elif self._deadline is not None and (self.nodes & 1023) == 0:
            if time.monotonic() > self._deadline:
                self.exhausted = True
        return self.exhausted
