"""(eps, h)-regularity checking and slack fitting.

A complex ``S`` has ``h`` vertices in every part and colors each of its
partitionwise edges with a color of the same index in ``G`` or leaves it
invisible (-1); if an edge is invisible so is every edge containing it.
Condition (i) asks that the probability a uniform partitionwise map
sends every visible edge of ``S`` onto an edge of the same color lies in
``prod (d ±̇ delta)`` over the visible edges, with the interval clamped
to ``[0, 1]`` factorwise. Condition (ii) bounds the mean slack per index
by ``eps / |C_I|``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from ..errors import CapabilityError, InconsistencyError, InputError
from .bound import BoundGraph, TotalColor, _fmt, density_table, index_sets, subsets

EXACT_CAP = 1_000_000
COMPLEX_CAP = 100_000
DEFAULT_SAMPLES = 20_000
CONFIDENCE = 0.99
FIT_BITS = 40
INVISIBLE = -1


def hoeffding_radius(samples: int, confidence: float = CONFIDENCE) -> float:
    """Two-sided radius valid for any [0,1]-valued mean at the given confidence."""
    return math.sqrt(math.log(2 / (1 - confidence)) / (2 * samples))


class Complex:
    """A simplicial complex with ``h`` vertices per part.

    ``cells[I]`` is an integer array of shape ``(h,) * |I|``; entries are
    color positions in ``C_I`` of the reference graph, or -1 for invisible.
    """

    def __init__(self, r: int, k: int, h: int, cells: Mapping):
        if h < 1:
            raise InputError(f"h must be >= 1, got {h}")
        self.r, self.k, self.h = r, k, h
        wanted = index_sets(r, k)
        self.cells = {}
        for I in wanted:
            if I not in cells:
                raise InputError(f"complex is missing index {_fmt(I)}")
            arr = np.asarray(cells[I], dtype=np.int64)
            if arr.shape != (h,) * len(I):
                raise InputError(f"complex index {_fmt(I)} has shape {arr.shape}, expected {(h,) * len(I)}")
            self.cells[I] = arr
        for I in wanted:
            for slots in itertools.product(range(h), repeat=len(I)):
                if self.cells[I][slots] == INVISIBLE:
                    continue
                for J in subsets(I)[:-1]:
                    sub = tuple(s for i, s in zip(I, slots) if i in J)
                    if self.cells[J][sub] == INVISIBLE:
                        raise InputError(
                            f"complex is not simplicial: edge {slots} of index {_fmt(I)} is visible "
                            f"but its sub-edge {sub} of index {_fmt(J)} is invisible"
                        )

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return (self.r, self.k, self.h) == (other.r, other.k, other.h) and all(
            np.array_equal(self.cells[I], other.cells[I]) for I in self.cells
        )

    __hash__ = None

    def __repr__(self):
        vis = sum(int((a != INVISIBLE).sum()) for a in self.cells.values())
        return f"Complex(r={self.r}, k={self.k}, h={self.h}, visible={vis})"

    def visible_edges(self):
        """``(I, slots, color)`` for every visible edge, in index order."""
        out = []
        for I, arr in self.cells.items():
            for slots in itertools.product(range(self.h), repeat=len(I)):
                c = int(arr[slots])
                if c != INVISIBLE:
                    out.append((I, slots, c))
        return out

    def validate_for(self, G: BoundGraph):
        if self.r != G.r:
            raise InputError(f"complex has r={self.r}, graph has r={G.r}")
        if self.k > G.k:
            raise InputError(f"complex bound {self.k} exceeds the graph bound {G.k}")
        for I, arr in self.cells.items():
            if arr.size and arr.max() >= len(G.color_sets[I]):
                raise InputError(f"complex index {_fmt(I)} uses a color outside the graph's C_I")


def enumerate_complexes(G: BoundGraph, h: int = 1, limit: int | None = COMPLEX_CAP):
    """Yield every complex over ``G``'s colors with ``h`` vertices per part.

    Yields at most ``limit`` complexes; callers detect truncation by
    asking for one more.
    """
    cells = [(I, slots) for I in index_sets(G.r, G.k) for slots in itertools.product(range(h), repeat=len(I))]
    where = {cell: i for i, cell in enumerate(cells)}
    parents = []
    for I, slots in cells:
        subs = []
        for J in subsets(I)[:-1]:
            subs.append(where[(J, tuple(s for i, s in zip(I, slots) if i in J))])
        parents.append(subs)
    options = [range(-1, len(G.color_sets[I])) for I, _ in cells]
    assign = [INVISIBLE] * len(cells)
    produced = 0

    def build():
        arrays = {I: np.full((h,) * len(I), INVISIBLE, dtype=np.int64) for I in index_sets(G.r, G.k)}
        for (I, slots), c in zip(cells, assign):
            arrays[I][slots] = c
        return Complex(G.r, G.k, h, arrays)

    def rec(i):
        nonlocal produced
        if limit is not None and produced >= limit:
            return
        if i == len(cells):
            produced += 1
            yield build()
            return
        if any(assign[p] == INVISIBLE for p in parents[i]):
            assign[i] = INVISIBLE
            yield from rec(i + 1)
            return
        for c in options[i]:
            assign[i] = c
            yield from rec(i + 1)
        assign[i] = INVISIBLE

    yield from rec(0)


class ProbabilityEstimate(NamedTuple):
    value: Fraction | float
    radius: float
    exact: bool
    samples: int | None = None


def embed_probability(
    G: BoundGraph,
    S: Complex,
    mode: str = "exact",
    samples: int = DEFAULT_SAMPLES,
    seed=None,
    cap: int = EXACT_CAP,
) -> ProbabilityEstimate:
    """Probability that a random partitionwise map matches every visible edge of ``S``."""
    S.validate_for(G)
    visible = S.visible_edges()
    if mode == "exact":
        return ProbabilityEstimate(_exact_probability(G, S.h, visible, cap), 0.0, True)
    if mode == "sampled":
        if seed is None:
            raise InputError("sampled mode needs a seed")
        rng = np.random.default_rng(seed)
        return _sampled_probability(G, S.h, visible, samples, rng)
    raise InputError(f"mode must be 'exact' or 'sampled', got {mode!r}")


def _exact_probability(G, h, visible, cap):
    sizes = G.ground.part_sizes
    total = 1
    for s in sizes:
        total *= s**h
    if total > cap:
        raise CapabilityError(f"exact mode would enumerate {total} maps, above the cap of {cap}")
    if not visible:
        return Fraction(1)
    naxes = len(sizes) * h
    acc = np.ones([sizes[a // h] for a in range(naxes)], dtype=bool)
    for I, slots, c in visible:
        shape = [1] * naxes
        for i, s in zip(I, slots):
            shape[i * h + s] = sizes[i]
        acc &= (G.coloring[I] == c).reshape(shape)
    return Fraction(int(acc.sum()), total)


def _sampled_probability(G, h, visible, samples, rng):
    if samples < 1:
        raise InputError(f"sample count must be positive, got {samples}")
    sizes = G.ground.part_sizes
    draws = [rng.integers(0, sizes[a // h], size=samples) for a in range(len(sizes) * h)]
    ok = np.ones(samples, dtype=bool)
    for I, slots, c in visible:
        ok &= G.coloring[I][tuple(draws[i * h + s] for i, s in zip(I, slots))] == c
    return ProbabilityEstimate(float(ok.mean()), hoeffding_radius(samples), False, samples)


# ---------------------------------------------------------------- slack functions


@dataclass(frozen=True)
class DeltaFunction:
    """Nonnegative slack per total color; unlisted total colors get 0."""

    values: Mapping[TotalColor, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        vals = {}
        for c, v in dict(self.values).items():
            v = Fraction(v)
            if v < 0:
                raise InputError(f"delta of {c} is negative ({v})")
            vals[c] = v
        object.__setattr__(self, "values", vals)

    def __getitem__(self, c: TotalColor) -> Fraction:
        return self.values.get(c, Fraction(0))

    def __len__(self):
        return len(self.values)

    def items(self):
        return self.values.items()

    def coded(self, G: BoundGraph) -> dict:
        out = {}
        for c, v in self.values.items():
            if v:
                out[(c.index, G.encode(c))] = v
        return out


def _interval(factors, delta_of):
    lo = Fraction(1)
    hi = Fraction(1)
    for key, d in factors:
        s = delta_of(key)
        lo *= max(Fraction(0), d - s)
        hi *= min(Fraction(1), d + s)
    return lo, hi


@dataclass(frozen=True)
class IndexCheck:
    index: tuple[int, ...]
    mean_delta: Fraction
    bound: Fraction
    ok: bool


@dataclass(frozen=True)
class ComplexCheck:
    number: int
    complex: Complex = field(repr=False, compare=False)
    probability: Fraction | float
    radius: float
    lower: Fraction
    upper: Fraction
    ok: bool


@dataclass
class RegularityReport:
    """Outcome of checking both regularity conditions.

    ``verdict`` is True only if every recorded check passed; ``complete``
    is False when the complex enumeration hit its cap, in which case the
    verdict covers the checked complexes only.
    """

    eps: Fraction
    h: int
    mode: str
    index_checks: list[IndexCheck]
    complex_checks: list[ComplexCheck]
    complete: bool = True
    seed: object = None
    samples: int | None = None

    @property
    def mean_delta_ok(self) -> bool:
        return all(c.ok for c in self.index_checks)

    @property
    def products_ok(self) -> bool:
        return all(c.ok for c in self.complex_checks)

    @property
    def verdict(self) -> bool:
        return self.mean_delta_ok and self.products_ok

    def violations(self) -> list[ComplexCheck]:
        return [c for c in self.complex_checks if not c.ok]


class _Checker:
    def __init__(self, G: BoundGraph, h: int):
        self.G = G
        self.h = h
        self.dens = density_table(G)
        self._restrict = {I: [[subsets(I).index(S) for S in subsets(J)] for J in subsets(I)] for I in G.coloring}

    def factors(self, S: Complex):
        """``((index, code), density)`` for the total color of each visible edge of ``S``."""
        G = self.G
        out = []
        for I, slots, _ in S.visible_edges():
            comps = []
            for J in subsets(I):
                sub = tuple(s for i, s in zip(I, slots) if i in J)
                comps.append(int(S.cells[J][sub]))
            code = G.tables[I].encode(comps)
            out.append(((I, code), self.dens[I].get(code, Fraction(0))))
        return out

    def index_checks(self, coded_delta, eps):
        checks = []
        for I, table in self.G.tables.items():
            mass = sum(cnt * coded_delta.get((I, code), 0) for code, cnt in table.total_counts.items())
            mean = Fraction(mass, table.size)
            bound = eps / len(self.G.color_sets[I])
            checks.append(IndexCheck(I, mean, bound, mean <= bound))
        return checks


def _complex_list(G, h, complexes, max_complexes):
    if complexes is not None:
        out = list(complexes)
        for S in out:
            S.validate_for(G)
            if S.h != h:
                raise InputError(f"supplied complex has h={S.h}, expected {h}")
        return out, True
    out = list(enumerate_complexes(G, h, None if max_complexes is None else max_complexes + 1))
    if max_complexes is not None and len(out) > max_complexes:
        return out[:max_complexes], False
    return out, True


def check_regularity(
    G: BoundGraph,
    delta: DeltaFunction,
    eps,
    h: int = 1,
    mode: str = "exact",
    samples: int = DEFAULT_SAMPLES,
    seed=None,
    complexes: Iterable[Complex] | None = None,
    max_complexes: int | None = COMPLEX_CAP,
    cap: int = EXACT_CAP,
) -> RegularityReport:
    """Check conditions (i) and (ii) of (eps, h)-regularity for a given slack."""
    eps = Fraction(eps)
    if eps < 0:
        raise InputError(f"eps must be >= 0, got {eps}")
    if mode == "sampled" and seed is None:
        raise InputError("sampled mode needs a seed")
    if mode not in ("exact", "sampled"):
        raise InputError(f"mode must be 'exact' or 'sampled', got {mode!r}")
    checker = _Checker(G, h)
    coded = delta.coded(G)
    items, complete = _complex_list(G, h, complexes, max_complexes)
    records = []
    for j, S in enumerate(items):
        factors = checker.factors(S)
        lo, hi = _interval(factors, lambda key: coded.get(key, 0))
        if mode == "exact":
            p = _exact_probability(G, h, S.visible_edges(), cap)
            ok = lo <= p <= hi
            records.append(ComplexCheck(j, S, p, 0.0, lo, hi, ok))
        else:
            est = _sampled_probability(G, h, S.visible_edges(), samples, np.random.default_rng([seed, j]))
            ok = float(lo) - est.radius <= est.value <= float(hi) + est.radius
            records.append(ComplexCheck(j, S, est.value, est.radius, lo, hi, ok))
    return RegularityReport(
        eps, h, mode, checker.index_checks(coded, eps), records, complete,
        seed if mode == "sampled" else None, samples if mode == "sampled" else None,
    )


def _least_raise(factors, chosen, slack, p):
    """Least dyadic ``t`` such that raising ``chosen`` to ``t`` puts ``p`` in the interval."""

    def passes(t):
        def lookup(key):
            base = slack.get(key, 0)
            return max(base, t) if key in chosen else base

        lo, hi = _interval(factors, lookup)
        return lo <= p <= hi

    if not passes(Fraction(1)):
        return None
    lo_i, hi_i = 0, 1 << FIT_BITS
    while lo_i < hi_i:
        mid = (lo_i + hi_i) // 2
        if passes(Fraction(mid, 1 << FIT_BITS)):
            hi_i = mid
        else:
            lo_i = mid + 1
    return Fraction(lo_i, 1 << FIT_BITS)


def fit_delta(
    G: BoundGraph,
    eps,
    h: int = 1,
    complexes: Iterable[Complex] | None = None,
    max_complexes: int | None = COMPLEX_CAP,
    cap: int = EXACT_CAP,
) -> tuple[DeltaFunction, RegularityReport]:
    """Smallest slack that makes every checked complex satisfy condition (i).

    Complexes are visited in enumeration order. When one fails, the
    realized total colors on its largest visible edges are raised to a
    common value ``t``, the least multiple of ``2**-40`` that fixes it;
    if no such value exists, all realized total colors on its visible
    edges are raised instead. Factors of density 1 are skipped when the
    probability lies above the interval, since they cannot lift it. Raising
    slack only widens intervals, so earlier complexes keep passing.
    Condition (ii) is then evaluated at ``eps``.
    """
    eps = Fraction(eps)
    checker = _Checker(G, h)
    items, complete = _complex_list(G, h, complexes, max_complexes)
    slack: dict = {}
    staged = []
    for S in items:
        factors = checker.factors(S)
        p = _exact_probability(G, h, S.visible_edges(), cap)
        staged.append((S, factors, p))
        lo, hi = _interval(factors, lambda key: slack.get(key, 0))
        if lo <= p <= hi:
            continue
        realized = {key for key, _ in factors if key[1] in G.tables[key[0]].total_counts}
        if p > hi:
            # only factors still below 1 can lift the upper end
            realized = {key for key, d in factors if key in realized and d < 1}
        top = max((len(key[0]) for key in realized), default=0)
        # prefer slack on the largest edges only; fall back to every factor
        for chosen in ({key for key in realized if len(key[0]) == top}, realized):
            t = _least_raise(factors, chosen, slack, p)
            if t is not None:
                break
        else:
            raise InconsistencyError(f"no slack repairs complex {S!r}")
        for key in chosen:
            slack[key] = max(slack.get(key, 0), t)
    records = []
    for j, (S, factors, p) in enumerate(staged):
        lo, hi = _interval(factors, lambda key: slack.get(key, 0))
        records.append(ComplexCheck(j, S, p, 0.0, lo, hi, lo <= p <= hi))
    delta = DeltaFunction({G.decode(I, code): v for (I, code), v in sorted(slack.items()) if v})
    report = RegularityReport(eps, h, "exact", checker.index_checks(slack, eps), records, complete)
    return delta, report
