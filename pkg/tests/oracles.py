"""Brute-force reference implementations that share no code with the package.

Hypergraphs are plain dicts from sorted vertex tuples to color labels;
bound graphs are read through ``edge_color`` only.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb


def colex_subsets(n, k):
    subs = list(itertools.combinations(range(1, n + 1), k))
    return sorted(subs, key=lambda s: tuple(reversed(s)))


def as_dict(H):
    """Edge dict of a package hypergraph, read through its public mapping."""
    return dict(H.as_mapping())


def embeds(host: dict, n: int, pat: dict, m: int, ok=lambda want, have: want == have):
    """Lexicographically least injection [m] -> [n] preserving the relation on every pattern edge."""
    for phi in itertools.permutations(range(1, n + 1), m):
        if all(ok(c, host[tuple(sorted(phi[v - 1] for v in e))]) for e, c in pat.items()):
            return phi
    return None


def induced(host: dict, verts):
    verts = sorted(verts)
    pos = {v: i + 1 for i, v in enumerate(verts)}
    return {tuple(pos[v] for v in e): c for e, c in host.items() if set(e) <= set(verts)}


def is_member(host: dict, n: int, members) -> bool:
    """``members`` is a list of ``(dict, m)``."""
    return all(embeds(host, n, F, m) is None for F, m in members)


def all_colorings(n, k, colors):
    edges = colex_subsets(n, k)
    for word in itertools.product(colors, repeat=len(edges)):
        yield dict(zip(edges, word))


def count(n, k, colors, members) -> int:
    return sum(is_member(H, n, members) for H in all_colorings(n, k, colors))


def ex_product(n, k, colors, members) -> int:
    """Max of prod |H(e)| over choice assignments all of whose selections avoid ``members``."""
    edges = colex_subsets(n, k)
    subsets = [s for r in range(1, len(colors) + 1) for s in itertools.combinations(colors, r)]
    best = 0
    for choice in itertools.product(subsets, repeat=len(edges)):
        prod = 1
        for s in choice:
            prod *= len(s)
        if prod <= best:
            continue
        if all(is_member(dict(zip(edges, sel)), n, members) for sel in itertools.product(*choice)):
            best = prod
    return best


def max_black(n, k, ncolors_white, members_black) -> int:
    """Most black edges in a black/white coloring with no black-induced copy of a member.

    ``members_black`` lists ``(set of black edges, m)``.
    """
    edges = colex_subsets(n, k)
    best = -1
    for word in itertools.product((True, False), repeat=len(edges)):
        nb = sum(word)
        if nb <= best:
            continue
        black = {e for e, b in zip(edges, word) if b}
        bad = False
        for F, m in members_black:
            for phi in itertools.permutations(range(1, n + 1), m):
                if all(tuple(sorted(phi[v - 1] for v in e)) in black for e in F):
                    bad = True
                    break
            if bad:
                break
        if not bad:
            best = nb
    return best


def chromatic(m, edges) -> int:
    if not edges:
        return 1 if m else 0
    for c in range(1, m + 1):
        for col in itertools.product(range(c), repeat=m):
            if all(col[u - 1] != col[v - 1] for u, v in edges):
                return c
    return m


def embed_probability(G, cells, h):
    """Enumerate every map sending ``h`` slots of each part to vertices; ``cells`` maps (I, slots) to labels."""
    sizes = G.ground.part_sizes
    axes = [range(sizes[i]) for i in range(len(sizes)) for _ in range(h)]
    hit = total = 0
    for img in itertools.product(*axes):
        total += 1
        good = True
        for (I, slots), label in cells.items():
            edge = tuple(img[i * h + s] for i, s in zip(I, slots))
            if G.edge_color(I, edge) != label:
                good = False
                break
        hit += good
    return Fraction(hit, total)


def densities(G, I):
    """Map total-color tuple -> density, by counting edges."""
    parts = list(I)
    subs = [J for r in range(1, len(I) + 1) for J in itertools.combinations(I, r)]
    subs.sort(key=lambda J: (len(J), J))
    totals = {}
    for e in itertools.product(*(range(G.ground.part_sizes[i]) for i in parts)):
        pos = dict(zip(parts, e))
        tc = tuple(G.edge_color(J, tuple(pos[j] for j in J)) for J in subs)
        totals[tc] = totals.get(tc, 0) + 1
    frames = {}
    for tc, c in totals.items():
        frames[tc[:-1]] = frames.get(tc[:-1], 0) + c
    return {tc: Fraction(c, frames[tc[:-1]]) for tc, c in totals.items()}


def turan_edges(n, parts):
    q, r = divmod(n, parts)
    sizes = [q + 1] * r + [q] * (parts - r)
    return (n * n - sum(s * s for s in sizes)) // 2


def n_edges(n, k):
    return comb(n, k)
