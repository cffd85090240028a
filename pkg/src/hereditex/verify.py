"""Invariant suites over small instance sets, shared by the test suite and the CLI."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .budget import SearchBudget
from .census import count_brute_oracle, count_property
from .errors import EmptyPropertyError
from .extremal import ex_brute_oracle, ex_exact, monotone_ex
from .hypercore import ColoredHypergraph, ColorSet, canonical_form
from .properties import BI, BIFamily, ForbiddenFamily, expand_bi_family, member, member_bi

BW2 = ColorSet(("black", "white"))
SUITES = ("monotonicity", "lowerbound", "bi-equivalence", "oracle")


@dataclass(frozen=True)
class Check:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(label, bool(ok), detail))

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.ok else 'FAIL'}  {c.label}" + (f"  [{c.detail}]" if c.detail else "") for c in self.checks]
        failed = sum(not c.ok for c in self.checks)
        out.append(f"suite {self.name}: {len(self.checks) - failed}/{len(self.checks)} checks passed")
        return out


def all_colorings(k: int, m: int, colors: ColorSet, distinct: bool = True) -> list[ColoredHypergraph]:
    """Every coloring of the k-subsets of ``[m]``; one per relabeling class when ``distinct``."""
    out, seen = [], set()
    for word in itertools.product(range(len(colors)), repeat=comb(m, k)):
        H = ColoredHypergraph(k, m, colors, word)
        if distinct:
            key = canonical_form(H).edges
            if key in seen:
                continue
            seen.add(key)
        out.append(H)
    return out


def single_member_families(k: int = 2, sizes=(2, 3), colors: ColorSet = BW2) -> list[ForbiddenFamily]:
    """One family per relabeling class of colored hypergraph on each size in ``sizes``."""
    return [ForbiddenFamily(k, colors, (F,)) for m in sizes if m >= k for F in all_colorings(k, m, colors)]


def single_member_bi_families(ell: int, k: int = 2, sizes=(2, 3)) -> list[BIFamily]:
    return [BIFamily(k, ell, (F,)) for m in sizes if m >= k for F in all_colorings(k, m, BI)]


def describe(fam) -> str:
    parts = []
    for F in fam.members:
        labels = ",".join(F.colors.labels[c][0] for c in F.edges)
        parts.append(f"m={F.n}:{labels}")
    extra = f" ell={fam.ell}" if isinstance(fam, BIFamily) else ""
    return f"k={fam.k}{extra} [{' '.join(parts) or 'empty'}]"


def _best(n, fam, budget):
    try:
        return ex_exact(n, fam, budget).best_product
    except EmptyPropertyError:
        return 0


def monotonicity_suite(families, n_max: int = 5, budget: SearchBudget | None = None) -> SuiteReport:
    """``B(n+1)**C(n,k) <= B(n)**C(n+1,k)`` for ``n = k..n_max``."""
    rep = SuiteReport("monotonicity")
    for fam in families:
        k = fam.k
        best = {n: _best(n, fam, budget) for n in range(k, n_max + 2)}
        for n in range(k, n_max + 1):
            a, b = best[n + 1], best[n]
            ok = a ** comb(n, k) <= b ** comb(n + 1, k)
            rep.add(f"{describe(fam)} n={n}->{n + 1}", ok, f"B={b},{a}")
    return rep


def lowerbound_suite(cases, budget: SearchBudget | None = None) -> SuiteReport:
    """``best_product <= count`` for each ``(family, n)``."""
    rep = SuiteReport("lowerbound")
    for fam, n in cases:
        best = _best(n, fam, budget)
        count = count_property(n, fam, budget)
        rep.add(f"{describe(fam)} n={n}", best <= count, f"best={best} count={count}")
    return rep


def bi_equivalence_suite(families, n_max: int = 4, member_n_max: int = 4, budget=None) -> SuiteReport:
    """Monotone formula against the expanded family, and black-induced membership against plain membership."""
    rep = SuiteReport("bi-equivalence")
    for fam in families:
        expanded = expand_bi_family(fam)
        for n in range(fam.k, n_max + 1):
            try:
                a = monotone_ex(n, fam, budget).best_product
            except EmptyPropertyError:
                a = 0
            b = _best(n, expanded, budget)
            rep.add(f"{describe(fam)} ex n={n}", a == b, f"monotone={a} expanded={b}")
        bad = 0
        for n in range(fam.k, member_n_max + 1):
            for H in all_colorings(fam.k, n, fam.colors, distinct=False):
                bad += member_bi(H, fam) != member(H, expanded)
        rep.add(f"{describe(fam)} membership n<={member_n_max}", bad == 0, f"{bad} disagreements")
    return rep


def oracle_suite(ex_cases, count_cases, symmetry: bool = False) -> SuiteReport:
    """Search against brute force for ``ex`` and for counts."""
    rep = SuiteReport("oracle")
    budget = SearchBudget(symmetry=symmetry)
    for fam, n in ex_cases:
        a = _best(n, fam, budget)
        b = ex_brute_oracle(n, fam)
        rep.add(f"{describe(fam)} ex n={n}", a == b, f"search={a} brute={b}")
    for fam, n in count_cases:
        a = count_property(n, fam, budget)
        b = count_brute_oracle(n, fam)
        rep.add(f"{describe(fam)} count n={n}", a == b, f"search={a} brute={b}")
    return rep


def default_cases(suite: str, n_max: int | None = None):
    """Instance sets used when no family is given."""
    fams = single_member_families()
    if suite == "monotonicity":
        return dict(families=fams, n_max=n_max or 5)
    if suite == "lowerbound":
        top = n_max or 4
        return dict(cases=[(f, n) for f in fams for n in range(2, top + 1)])
    if suite == "bi-equivalence":
        top = n_max or 4
        return dict(families=single_member_bi_families(1) + single_member_bi_families(2), n_max=top)
    if suite == "oracle":
        top = n_max or 4
        k3 = single_member_families(3, (4,))
        ex_cases = [(f, n) for f in fams for n in range(2, top + 1)] + [(f, 4) for f in k3]
        count_cases = list(ex_cases)
        return dict(ex_cases=ex_cases, count_cases=count_cases)
    raise ValueError(suite)


def run_suite(suite: str, family=None, n_max: int | None = None, budget=None) -> SuiteReport:
    if suite == "monotonicity":
        args = default_cases(suite, n_max) if family is None else dict(families=[family], n_max=n_max or 5)
        return monotonicity_suite(budget=budget, **args)
    if suite == "lowerbound":
        if family is None:
            return lowerbound_suite(budget=budget, **default_cases(suite, n_max))
        return lowerbound_suite([(family, n) for n in range(family.k, (n_max or 4) + 1)], budget)
    if suite == "bi-equivalence":
        if family is None:
            return bi_equivalence_suite(budget=budget, **default_cases(suite, n_max))
        return bi_equivalence_suite([family], n_max or 4, budget=budget)
    if suite == "oracle":
        if family is None:
            return oracle_suite(**default_cases(suite, n_max))
        cases = [(family, n) for n in range(family.k, (n_max or 4) + 1)]
        return oracle_suite(cases, cases)
    raise ValueError(f"unknown suite {suite!r}")
