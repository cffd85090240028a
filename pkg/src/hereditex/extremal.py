"""Exact extremal values by branch and bound.

``ex(n, P)`` is the largest average of ``log2 |H(e)|`` over P-good choice
hypergraphs ``H`` on ``[n]``. The solver maximizes the integer product
``prod_e |H(e)|`` instead, so every comparison is exact.

Edges are assigned in colex rank order. Candidate choice sets are tried
largest first, and each assignment is rejected as soon as a forbidden
member choice-embeds into the assigned prefix through the new edge.
Pruning uses the heredity of the property: the restriction of a good
hypergraph to ``[u]`` is good, so the product over edges inside ``[u]``
is at most the optimum ``B(u)`` of the smaller instance. The optimum at
``n`` is also capped by vertex averaging, ``B(n)**(n-k) <= B(n-1)**n``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from ._intmath import exact_log2, iroot
from .budget import SearchBudget
from .errors import CapabilityError, EmptyPropertyError, InputError
from .hypercore import ChoiceHypergraph, edge_list, rank_table
from .properties import (
    BLACK,
    BIFamily,
    ForbiddenFamily,
    black_pattern,
    chromatic_number,
    member_all_selections_oracle,
)


@dataclass(frozen=True)
class ExtremalResult:
    """Optimum of the extremal problem at one ``n``.

    ``exact`` is False when the budget ran out; ``best_product`` is then
    only a lower bound on the optimum.
    """

    n: int
    k: int
    best_product: int
    witness: ChoiceHypergraph
    exact: bool = True
    nodes: int = 0
    max_black: int | None = None
    family: object = field(default=None, compare=False, repr=False)

    @property
    def n_edges(self) -> int:
        return comb(self.n, self.k)

    @property
    def ex_value(self) -> float:
        return math.log2(self.best_product) / self.n_edges

    @property
    def ex_fraction(self) -> Fraction | None:
        """``ex`` as a rational when the product is a power of two."""
        e = exact_log2(self.best_product)
        return None if e is None else Fraction(e, self.n_edges)

    @property
    def ex_text(self) -> str:
        """Exact rendering, unreduced: ``a/E`` or ``log2(P)/E``."""
        e = exact_log2(self.best_product)
        if e is not None:
            return f"{e}/{self.n_edges}"
        return f"log2({self.best_product})/{self.n_edges}"


def _value_order(ncolors: int) -> list[int]:
    masks = range(1, 1 << ncolors)
    return sorted(masks, key=lambda m: (-m.bit_count(), [i for i in range(ncolors) if m >> i & 1]))


class _Solver:
    """Maximize the product of per-edge weights subject to pattern avoidance.

    ``values`` are (host mask, weight) pairs in branching order. The
    lexicographically least optimal word (by value position, edges in colex
    order) is returned; symmetry pruning keeps it because that word is the
    least in its relabeling orbit.
    """

    def __init__(self, k, values, patterns, budget, meter):
        self.k = k
        self.values = values
        self.patterns = patterns
        self.budget = budget
        self.meter = meter
        self.wmax = max(w for _, w in values)

    def solve_chain(self, n):
        """Optima for u = k..n; returns (best word, product, exact)."""
        k = self.k
        if n < k:
            raise InputError(f"need n >= k, got n={n}, k={k}")
        bounds = {}
        for u in range(k, n + 1):
            cap = self.wmax ** comb(u, k)
            if u > k:
                cap = min(cap, iroot(bounds[u - 1] ** u, u - k))
            bounds[u] = cap
            word, best, exact = self._solve(u, bounds)
            if exact:
                bounds[u] = best
        return word, best, exact

    def _solve(self, n, bounds):
        k = self.k
        for p in self.patterns:
            if p.unconstrained and p.m <= n:
                raise EmptyPropertyError(f"a forbidden member with no constrained edge fits on {n} vertices")
        edges = edge_list(n, k)
        E = len(edges)
        values = self.values
        nvals = len(values)
        wmax = self.wmax
        patterns = [p for p in self.patterns if p.m <= n]
        maxv = [e[-1] for e in edges]
        complete = [r == comb(maxv[r], k) - 1 for r in range(E)]
        cap_n = bounds[n]
        host = [0] * E
        word = [0] * E
        best_word = None
        best = 0
        meter = self.meter
        symmetry = self.budget.symmetry
        swaps = _transposition_tables(n, k) if symmetry else None
        wpow = [wmax**j for j in range(max(comb(n, k - 1), n) + E + 1)]
        inner = [comb(u - 1, k - 1) if u else 0 for u in range(n + 1)]

        def upper(r, cur):
            v = maxv[r]
            ub = min(bounds[v], cur * wpow[comb(v, k) - r])
            for u in range(v + 1, n + 1):
                ub = min(bounds[u], ub * wpow[inner[u]])
            return ub

        def admissible(r, mask):
            host[r] = mask
            anchor = edges[r]
            for p in patterns:
                if p.anchored_exists(host, n, r, anchor, mask):
                    return False
            return True

        # iterative DFS: choice position per depth
        pos = [-1] * E
        prods = [1] * (E + 1)
        r = 0
        stopped = False
        while r >= 0:
            pos[r] += 1
            if pos[r] >= nvals:
                pos[r] = -1
                host[r] = 0
                r -= 1
                continue
            # the budget is honored once a first witness exists
            if meter.tick() and best:
                stopped = True
                break
            mask, weight = values[pos[r]]
            cur = prods[r] * weight
            if best and upper(r, cur) <= best:
                # later values have no larger weight in the orders we use
                if _weights_nonincreasing(values, pos[r]):
                    pos[r] = nvals
                continue
            if not admissible(r, mask):
                host[r] = 0
                continue
            word[r] = pos[r]
            if symmetry and complete[r] and not _is_lex_leader(word, swaps[maxv[r]]):
                host[r] = 0
                continue
            prods[r + 1] = cur
            if r == E - 1:
                if cur > best:
                    best = cur
                    best_word = list(word)
                    if best >= cap_n:
                        break
                host[r] = 0
                continue
            r += 1
        if best_word is None:
            raise EmptyPropertyError(f"no good hypergraph exists on {n} vertices")
        return best_word, best, not stopped


def _weights_nonincreasing(values, i):
    w = values[i][1]
    return all(values[j][1] <= w for j in range(i + 1, len(values)))


def _transposition_tables(n, k):
    """For each v, rank permutations of the edges inside [v] under transpositions of [v]."""
    table = rank_table(n, k)
    out = {}
    for v in range(k, n + 1):
        inside = edge_list(v, k)
        perms = []
        for i in range(1, v + 1):
            for j in range(i + 1, v + 1):
                swap = {i: j, j: i}
                perms.append([table[tuple(sorted(swap.get(x, x) for x in e))] for e in inside])
        out[v] = perms
    return out


def _is_lex_leader(word, perms):
    """No transposition of the completed prefix gives a smaller word."""
    for perm in perms:
        for p, q in enumerate(perm):
            a, b = word[q], word[p]
            if a != b:
                if a < b:
                    return False
                break
    return True


def _chain(k, values, patterns, n, budget):
    budget = budget if budget is not None else SearchBudget.from_env()
    meter = budget.meter()
    solver = _Solver(k, values, patterns, budget, meter)
    word, best, exact = solver.solve_chain(n)
    return word, best, exact, meter.nodes


def ex_exact(n: int, fam: ForbiddenFamily, budget: SearchBudget | None = None) -> ExtremalResult:
    """Exact ``max prod_e |H(e)|`` over ``Forb(fam)``-good choice hypergraphs on ``[n]``."""
    if n < fam.k:
        raise InputError(f"need n >= k, got n={n}, k={fam.k}")
    masks = _value_order(len(fam.colors))
    values = [(m, m.bit_count()) for m in masks]
    word, best, exact, nodes = _chain(fam.k, values, fam.patterns, n, budget)
    witness = ChoiceHypergraph(fam.k, n, fam.colors, tuple(values[i][0] for i in word))
    return ExtremalResult(n, fam.k, best, witness, exact, nodes, family=fam)


def monotone_ex(n: int, fam: BIFamily, budget: SearchBudget | None = None) -> ExtremalResult:
    """Extremal value of ``Forb_bi(fam)`` through the maximum number of black edges.

    Searches black/white colorings directly (black tried first) rather
    than expanding the family. The result's ``best_product`` is
    ``(ell+1)**max_black * ell**(E - max_black)``.
    """
    k, ell = fam.k, fam.ell
    if n < k:
        raise InputError(f"need n >= k, got n={n}, k={k}")
    bw = fam.colors
    patterns = [black_pattern(F, bw) for F in fam.members]
    black_mask = 1 << bw.index(BLACK)
    white_mask = 1 << 1
    values = [(black_mask, 2), (white_mask, 1)]
    word, best, exact, nodes = _chain(k, values, patterns, n, budget)
    max_black = best.bit_length() - 1
    E = comb(n, k)
    whites = bw.full_mask & ~black_mask
    witness = ChoiceHypergraph(k, n, bw, tuple(bw.full_mask if i == 0 else whites for i in word))
    product = (ell + 1) ** max_black * ell ** (E - max_black)
    return ExtremalResult(n, k, product, witness, exact, nodes, max_black=max_black, family=fam)


def erdos_stone_value(fam: BIFamily) -> Fraction:
    """``min_F (1 - 1/(chi(F) - 1))`` over the members of a graph family."""
    if fam.k != 2 or fam.ell != 1:
        raise InputError(f"needs k=2 and ell=1, got k={fam.k}, ell={fam.ell}")
    if not fam.members:
        raise InputError("needs at least one member")
    values = []
    for i, F in enumerate(fam.members):
        chi = chromatic_number(F)
        if chi < 2:
            raise InputError(f"member {i} has no black edge; 1 - 1/(chi-1) is undefined for chi={chi}")
        values.append(1 - Fraction(1, chi - 1))
    return min(values)


BRUTE_CAP = 2**16


def ex_brute_oracle(n: int, fam: ForbiddenFamily, cap: int = BRUTE_CAP) -> int:
    """Best product by checking every choice assignment selection by selection."""
    k = fam.k
    E = comb(n, k)
    masks = range(1, 1 << len(fam.colors))
    if len(masks) ** E > cap:
        raise CapabilityError(f"{len(masks)}**{E} choice assignments exceed the cap of {cap}")
    best = 0
    for word in itertools.product(masks, repeat=E):
        prod = math.prod(m.bit_count() for m in word)
        if prod > best and member_all_selections_oracle(ChoiceHypergraph(k, n, fam.colors, word), fam):
            best = prod
    return best
