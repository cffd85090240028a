import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hereditex import (
    BI,
    BIFamily,
    CapabilityError,
    ChoiceHypergraph,
    ColoredHypergraph,
    ForbiddenFamily,
    InputError,
    bw_colors,
    chromatic_number,
    contains_black_induced,
    edge_list,
    expand_bi_family,
    induced_subgraph,
    is_good,
    member,
    member_all_selections_oracle,
    member_bi,
)
from hereditex.properties import bi_recolorings

from . import oracles
from .helpers import BW, bi_clique, bi_member, complete, cycle_edges, graph, k3_family


def test_member_examples():
    empty = ForbiddenFamily(2, BW, ())
    fam = k3_family()
    assert member(complete(2, 3), empty)
    assert not member(complete(2, 3), fam)
    assert member(graph(3, [(1, 2), (2, 3)]), fam)


def test_member_rejects_mismatch():
    with pytest.raises(InputError):
        member(complete(3, 4), k3_family())


def test_family_dedups_relabelings():
    a = graph(3, [(1, 2)])
    b = graph(3, [(2, 3)])
    fam = ForbiddenFamily(2, BW, (a, b, complete(2, 3)))
    assert len(fam) == 2 and fam.members[0] == a


def test_family_rejects_mixed_members():
    with pytest.raises(InputError):
        ForbiddenFamily(2, BW, (complete(3, 3),))


# ---------------------------------------------------------------- goodness


def test_is_good_examples():
    fam = k3_family()
    full = ChoiceHypergraph.from_mapping(2, 3, BW, {e: ["black", "white"] for e in edge_list(3, 2)})
    ok, wit = is_good(full, fam, return_witness=True)
    assert not ok
    F, phi = wit
    assert F == complete(2, 3) and phi == (1, 2, 3)
    partial = ChoiceHypergraph.from_mapping(
        2, 3, BW, {(1, 2): ["black", "white"], (1, 3): ["black", "white"], (2, 3): ["white"]}
    )
    assert is_good(partial, fam)
    assert member_all_selections_oracle(partial, fam)
    assert is_good(full, ForbiddenFamily(2, BW, ()))


def _random_choice(rnd, k, n, colors):
    full = (1 << len(colors)) - 1
    return ChoiceHypergraph(k, n, colors, tuple(rnd.randint(1, full) for _ in edge_list(n, k)))


def _random_graph(rnd, k, n, colors):
    return ColoredHypergraph(k, n, colors, tuple(rnd.randrange(len(colors)) for _ in edge_list(n, k)))


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 3), st.integers(0, 5), st.integers(1, 2), st.randoms(use_true_random=False))
def test_goodness_equals_selection_oracle(k, n, nmembers, rnd):
    n = max(n, k)
    fam = ForbiddenFamily(k, BW, tuple(_random_graph(rnd, k, rnd.randint(k, k + 1), BW) for _ in range(nmembers)))
    H = _random_choice(rnd, k, n, BW)
    assert is_good(H, fam) == member_all_selections_oracle(H, fam)
    members = [(F.as_mapping(), F.n) for F in fam.members]
    expect = all(oracles.is_member(S.as_mapping(), n, members) for S in H.selections())
    assert is_good(H, fam) == expect


def test_selection_oracle_cap():
    H = ChoiceHypergraph.from_mapping(2, 3, BW, {e: ["black", "white"] for e in edge_list(3, 2)})
    with pytest.raises(CapabilityError):
        member_all_selections_oracle(H, k3_family(), cap=4)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6), st.randoms(use_true_random=False))
def test_heredity(n, rnd):
    fam = ForbiddenFamily(2, BW, (_random_graph(rnd, 2, 3, BW),))
    H = _random_graph(rnd, 2, n, BW)
    if not member(H, fam):
        return
    for _ in range(5):
        S = [v for v in range(1, n + 1) if rnd.random() < 0.6]
        assert member(induced_subgraph(H, S), fam)


# ---------------------------------------------------------------- black-induced


def test_black_induced_examples():
    bw = bw_colors(1)
    host = ColoredHypergraph.from_edge_set(2, 4, bw, [(1, 3)], "black", "white_1")
    assert contains_black_induced(host, bi_member(2, [(1, 2)])) is not None
    c4 = ColoredHypergraph.from_edge_set(2, 4, bw, [(1, 2), (2, 3), (3, 4), (1, 4)], "black", "white_1")
    assert contains_black_induced(c4, bi_member(3, [(1, 2), (1, 3), (2, 3)])) is None
    assert contains_black_induced(c4, bi_member(3, [])) == (1, 2, 3)


def test_black_induced_palette_checks():
    with pytest.raises(InputError):
        contains_black_induced(complete(2, 3), complete(2, 3))
    with pytest.raises(InputError):
        member_bi(complete(2, 3), bi_clique(3))


def test_expand_bi_examples():
    F = bi_member(3, [(1, 2)])
    raw = list(bi_recolorings(F, 1))
    assert len(raw) == 4
    fam = expand_bi_family(BIFamily(2, 1, (F,)))
    # two of the four recolorings are relabelings of each other
    assert len(fam) == 3
    K = bi_clique(3)
    assert expand_bi_family(K).members == (complete(2, 3, bw_colors(1)),)
    assert len(expand_bi_family(BIFamily(2, 2, ()))) == 0


def test_bi_equivalence_exhaustive():
    for ell in (1, 2):
        bw = bw_colors(ell)
        for m in (2, 3):
            for word in itertools.product(range(2), repeat=len(edge_list(m, 2))):
                F = ColoredHypergraph(2, m, BI, word)
                fam = BIFamily(2, ell, (F,))
                exp = expand_bi_family(fam)
                black = [(e, 0) for e, c in F.as_mapping().items() if c == "black"]
                for n in range(2, 5):
                    for H in itertools.product(range(len(bw)), repeat=len(edge_list(n, 2))):
                        H = ColoredHypergraph(2, n, bw, H)
                        got = member_bi(H, fam)
                        assert got == member(H, exp)
                        want = oracles.embeds(H.as_mapping(), n, dict(black), m, lambda _w, have: have == "black") is None
                        assert got == want


# ---------------------------------------------------------------- chromatic number


def test_chromatic_examples():
    assert chromatic_number(bi_clique(3).members[0]) == 3
    assert chromatic_number(bi_clique(4).members[0]) == 4
    assert chromatic_number(bi_member(5, cycle_edges(5))) == 3
    assert chromatic_number(bi_member(3, [])) == 1
    with pytest.raises(CapabilityError):
        chromatic_number(bi_member(3, [(1, 2, 3)], k=3))


def test_chromatic_matches_exhaustive_all_small_graphs():
    for m in range(1, 6):
        edges = list(itertools.combinations(range(1, m + 1), 2))
        for word in itertools.product((0, 1), repeat=len(edges)):
            black = [e for e, b in zip(edges, word) if b]
            assert chromatic_number(bi_member(m, black)) == oracles.chromatic(m, black)


def test_chromatic_random_six_vertex():
    rnd = random.Random(11)
    edges = list(itertools.combinations(range(1, 7), 2))
    for _ in range(300):
        black = [e for e in edges if rnd.random() < 0.5]
        assert chromatic_number(bi_member(6, black)) == oracles.chromatic(6, black)
