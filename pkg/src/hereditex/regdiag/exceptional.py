"""Exceptional total colors and the goodified choice graph built from them.

A total color is exceptional when some restriction of it to a
sub-index ``I'`` has relative density below ``sqrt(eps)/|C_I'|`` or
slack above ``0.1 sqrt(eps)/|C_I'|``. Both tests are done on squares,
so no square root is ever taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import InconsistencyError, InputError
from .bound import BoundGraph, TotalColor, density_table, subsets
from .regularity import DeltaFunction


def _below_density(d: Fraction, ncolors: int, eps: Fraction) -> bool:
    # d < sqrt(eps)/c  <=>  (d*c)**2 < eps
    return (d * ncolors) ** 2 < eps


def _above_slack(s: Fraction, ncolors: int, eps: Fraction) -> bool:
    # s > 0.1*sqrt(eps)/c  <=>  (10*s*c)**2 > eps
    return s > 0 and (10 * s * ncolors) ** 2 > eps


def exceptional_bound(k: int, eps) -> float:
    return 11 * 2**k * math.sqrt(Fraction(eps))


@dataclass
class ExceptionalReport:
    """Per-index probability that a uniform edge has an exceptional total color."""

    eps: Fraction
    k: int
    probabilities: dict
    exceptional: tuple[TotalColor, ...]
    graph: BoundGraph = field(repr=False, compare=False)
    _classifier: object = field(repr=False, compare=False, default=None)

    @property
    def bound(self) -> float:
        return exceptional_bound(self.k, self.eps)

    def within_bound(self, index=None) -> bool:
        """Exact test of ``P[exceptional] <= 11 * 2**k * sqrt(eps)``."""
        limit = 121 * 4**self.k * self.eps
        idx = [tuple(index)] if index is not None else list(self.probabilities)
        return all(self.probabilities[I] ** 2 <= limit for I in idx)

    def is_exceptional(self, c: TotalColor) -> bool:
        G = self.graph
        comps = [G.color_sets[J].index(lab) for J, lab in zip(subsets(c.index), c.components)]
        return self._classifier(c.index, comps)


class _Classifier:
    def __init__(self, G: BoundGraph, delta: DeltaFunction, eps: Fraction):
        self.G = G
        self.eps = eps
        self.dens = density_table(G)
        self.slack = delta.coded(G)
        self._pos = {I: [[subsets(I).index(S) for S in subsets(J)] for J in subsets(I)] for I in G.coloring}

    def __call__(self, I, comps) -> bool:
        G = self.G
        for J, positions in zip(subsets(I), self._pos[I]):
            code = G.tables[J].encode([comps[p] for p in positions])
            ncol = len(G.color_sets[J])
            # unrealized total colors have density 0
            if _below_density(self.dens[J].get(code, Fraction(0)), ncol, self.eps):
                return True
            if _above_slack(self.slack.get((J, code), Fraction(0)), ncol, self.eps):
                return True
        return False


def detect_exceptional(Gstar: BoundGraph, delta: DeltaFunction, eps) -> ExceptionalReport:
    eps = Fraction(eps)
    if eps < 0:
        raise InputError(f"eps must be >= 0, got {eps}")
    for c in delta.values:
        Gstar.encode(c)  # rejects total colors foreign to Gstar
    classify = _Classifier(Gstar, delta, eps)
    probs = {}
    exceptional = []
    for I, table in Gstar.tables.items():
        bad = 0
        for code, cnt in sorted(table.total_counts.items()):
            c = Gstar.decode(I, code)
            comps = [Gstar.color_sets[J].index(lab) for J, lab in zip(subsets(I), c.components)]
            if classify(I, comps):
                exceptional.append(c)
                bad += cnt
        probs[I] = Fraction(bad, table.size)
    return ExceptionalReport(eps, Gstar.k, probs, tuple(exceptional), Gstar, classify)


@dataclass
class GoodifiedGraph:
    """Choice sets on the size-k partitionwise edges of a bound graph.

    ``masks[I]`` holds a bitmask over ``color_sets[I]`` per edge.
    """

    graph: BoundGraph = field(repr=False)
    masks: dict

    def choice(self, index, edge) -> tuple[str, ...]:
        I = tuple(index)
        m = int(self.masks[I][tuple(edge)])
        return self.graph.color_sets[I].labels_of(m)

    def log2_total(self) -> float:
        """``sum_e log2 |H(e)|`` over all size-k edges."""
        return sum(math.log2(int(m).bit_count()) for a in self.masks.values() for m in a.flat)


def build_goodified(Gstar: BoundGraph, exc: ExceptionalReport) -> GoodifiedGraph:
    """Size-k edges get every top color whose total color with their frame is not exceptional.

    Exceptional edges keep their own color. Lower-index edges are dropped.
    """
    if exc.graph is not Gstar and exc.graph != Gstar:
        raise InputError("exceptional report was computed for a different graph")
    classify = exc._classifier
    masks = {}
    for I in Gstar.top_indices():
        table = Gstar.tables[I]
        ntop = len(Gstar.color_sets[I])
        by_code = {}
        for code in table.total_counts:
            c = Gstar.decode(I, code)
            comps = [Gstar.color_sets[J].index(lab) for J, lab in zip(subsets(I), c.components)]
            own = comps[-1]
            if classify(I, comps):
                by_code[code] = 1 << own
                continue
            mask = 0
            for top in range(ntop):
                if not classify(I, comps[:-1] + [top]):
                    mask |= 1 << top
            if not mask:
                raise InconsistencyError(
                    f"non-exceptional total color {c} admits no non-exceptional top color"
                )
            by_code[code] = mask
        lookup = np.vectorize(by_code.__getitem__, otypes=[np.int64])
        masks[I] = lookup(table.codes) if table.codes.size else table.codes.copy()
    return GoodifiedGraph(Gstar, masks)
