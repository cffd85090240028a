"""Exact labeled counts of ``Forb(F)`` on ``[n]`` and their comparison with ``ex``."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .budget import SearchBudget
from .errors import BudgetExhausted, CapabilityError, InputError
from .extremal import ex_exact
from .hypercore import ColoredHypergraph, edge_list
from .properties import ForbiddenFamily, member

BRUTE_CAP = 2**24


def count_property(n: int, fam: ForbiddenFamily, budget: SearchBudget | None = None) -> int:
    """Number of colorings of the k-subsets of ``[n]`` avoiding every member of ``fam``.

    Edges are colored in colex order; a branch is cut as soon as a member
    embeds through the newest edge into the colored prefix.
    """
    k = fam.k
    if n < 0:
        raise InputError(f"n must be >= 0, got {n}")
    for p in fam.patterns:
        if p.unconstrained and p.m <= n:
            return 0
    budget = budget if budget is not None else SearchBudget.from_env()
    meter = budget.meter()
    edges = edge_list(n, k)
    E = len(edges)
    if E == 0:
        return 1
    ncol = len(fam.colors)
    patterns = [p for p in fam.patterns if p.m <= n]
    host = [0] * E
    # only members that fit within [maxv] can fire at rank r
    live = [[p for p in patterns if p.m <= e[-1]] for e in edges]
    pos = [-1] * E
    total = 0
    r = 0
    while r >= 0:
        pos[r] += 1
        if pos[r] >= ncol:
            pos[r] = -1
            host[r] = 0
            r -= 1
            continue
        if meter.tick():
            raise BudgetExhausted(f"counting on {n} vertices stopped after {meter.nodes - 1} nodes")
        mask = 1 << pos[r]
        host[r] = mask
        anchor = edges[r]
        if any(p.anchored_exists(host, n, r, anchor, mask) for p in live[r]):
            continue
        if r == E - 1:
            total += 1
            continue
        r += 1
    return total


def count_brute_oracle(n: int, fam: ForbiddenFamily, cap: int = BRUTE_CAP) -> int:
    """Count by testing every coloring for membership."""
    E = comb(n, fam.k)
    c = len(fam.colors)
    if c**E > cap:
        raise CapabilityError(f"{c}**{E} colorings exceed the cap of {cap}")
    return sum(
        member(ColoredHypergraph(fam.k, n, fam.colors, word), fam)
        for word in itertools.product(range(c), repeat=E)
    )


@dataclass(frozen=True)
class CensusRow:
    """Exact count of the property at ``n`` next to its extremal product.

    The lower bound ``count >= best_product`` is the exact form of
    ``log2 |P_n| >= C(n,k) ex(n,P)``.
    """

    n: int
    k: int
    count: int
    best_product: int
    ex_text: str
    exact: bool = True

    @property
    def n_edges(self) -> int:
        return comb(self.n, self.k)

    @property
    def log_density(self) -> float:
        return math.log2(self.count) / self.n_edges if self.count else float("-inf")

    @property
    def ex_value(self) -> float:
        return math.log2(self.best_product) / self.n_edges

    @property
    def gap(self) -> float:
        return self.log_density - self.ex_value

    @property
    def lower_bound_holds(self) -> bool:
        return self.best_product <= self.count


def trend_report(fam: ForbiddenFamily, n_range: Iterable[int], budget: SearchBudget | None = None) -> list[CensusRow]:
    rows = []
    for n in n_range:
        res = ex_exact(n, fam, budget)
        count = count_property(n, fam, budget)
        rows.append(CensusRow(n, fam.k, count, res.best_product, res.ex_text, res.exact))
    return rows


def format_trend(rows: list[CensusRow], digits: int = 6) -> str:
    header = f"{'n':>3}  {'count':>14}  {'log2|P_n|/C(n,k)':>17}  {'ex':>16}  {'ex~':>9}  {'gap':>9}"
    lines = [header, "-" * len(header)]
    for row in rows:
        flag = "" if row.exact else "  (ex is a lower bound)"
        lines.append(
            f"{row.n:>3}  {row.count:>14}  {row.log_density:>17.{digits}f}  {row.ex_text:>16}  "
            f"{row.ex_value:>9.{digits}f}  {row.gap:>9.{digits}f}{flag}"
        )
    return "\n".join(lines)
