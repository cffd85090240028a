import itertools
from math import comb

import pytest

from hereditex import (
    BIFamily,
    BudgetExhausted,
    CapabilityError,
    ColoredHypergraph,
    ForbiddenFamily,
    SearchBudget,
    count_brute_oracle,
    count_property,
    expand_bi_family,
    format_trend,
    member_bi,
    trend_report,
)
from hereditex.properties import bw_colors

from . import oracles
from .helpers import BW, bi_clique, bi_member, complete, k3_family


def test_count_examples():
    assert count_property(3, ForbiddenFamily(2, BW, ())) == 8
    assert count_property(3, k3_family()) == 7
    assert count_property(3, ForbiddenFamily(2, BW, (complete(2, 2),))) == 1
    for fam in (ForbiddenFamily(2, BW, ()), k3_family(), ForbiddenFamily(2, BW, (complete(2, 2),))):
        assert count_brute_oracle(3, fam) == count_property(3, fam)


def test_triangle_free_counts():
    # labeled triangle-free graphs: OEIS A006785
    assert [count_property(n, k3_family()) for n in range(1, 7)] == [1, 2, 7, 41, 388, 5789]


def test_count_small_n():
    assert count_property(0, k3_family()) == 1
    assert count_property(1, k3_family()) == 1
    unconstrained = ForbiddenFamily(2, BW, (ColoredHypergraph(2, 1, BW, ()),))
    assert count_property(2, unconstrained) == 0


def test_count_matches_independent_oracle():
    for k, sizes, ns in ((2, (2, 3), range(2, 5)), (3, (3, 4), (4,))):
        for m in sizes:
            for word in itertools.product(range(2), repeat=comb(m, k)):
                fam = ForbiddenFamily(k, BW, (ColoredHypergraph(k, m, BW, word),))
                members = [(F.as_mapping(), F.n) for F in fam.members]
                for n in ns:
                    want = oracles.count(n, k, ["black", "white"], members)
                    assert count_property(n, fam) == want
                    assert count_brute_oracle(n, fam) == want


def test_count_upper_bound_and_multi_member():
    fam = ForbiddenFamily(2, BW, (complete(2, 3), complete(2, 3, label="white")))
    for n in range(2, 7):
        c = count_property(n, fam)
        assert 0 <= c <= 2 ** comb(n, 2)
    # Ramsey R(3,3)=6: every 2-coloring of K6 has a monochromatic triangle
    assert count_property(6, fam) == 0
    assert count_property(5, fam) == 12


def test_count_via_bi_expansion():
    for ell in (1, 2):
        fam = BIFamily(2, ell, (bi_member(3, [(1, 2), (2, 3)]),))
        bw = bw_colors(ell)
        for n in range(2, 5):
            direct = sum(
                member_bi(ColoredHypergraph(2, n, bw, w), fam)
                for w in itertools.product(range(ell + 1), repeat=comb(n, 2))
            )
            assert count_property(n, expand_bi_family(fam)) == direct


def test_count_budget():
    with pytest.raises(BudgetExhausted):
        count_property(6, k3_family(), SearchBudget(max_nodes=10))


def test_brute_cap():
    with pytest.raises(CapabilityError):
        count_brute_oracle(8, k3_family())


def test_trend_examples():
    rows = trend_report(ForbiddenFamily(2, BW, ()), range(2, 5))
    assert all(r.gap == pytest.approx(0) for r in rows)
    rows = trend_report(k3_family(), range(3, 6))
    r3 = rows[0]
    assert r3.count == 7 and r3.ex_text == "2/3"
    assert r3.log_density == pytest.approx(0.9357849740192014)
    assert r3.gap > 0
    assert all(r.lower_bound_holds and r.gap >= 0 for r in rows)
    rows = trend_report(ForbiddenFamily(2, BW, (complete(2, 2),)), range(2, 6))
    assert all(r.count == 1 and r.best_product == 1 and r.gap == 0 for r in rows)
    text = format_trend(rows)
    assert text.splitlines()[0].split()[0] == "n" and len(text.splitlines()) == 2 + len(rows)


def test_lower_bound_on_bi_families():
    for fam in (bi_clique(3), bi_clique(4)):
        exp = expand_bi_family(fam)
        for n in range(2, 6):
            rows = trend_report(exp, [n])
            assert rows[0].lower_bound_holds
