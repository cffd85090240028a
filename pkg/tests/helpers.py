"""Shared builders for the test suite."""

from __future__ import annotations

import itertools

import numpy as np

from hereditex import BI, BIFamily, ColoredHypergraph, ColorSet, ForbiddenFamily
from hereditex.regdiag import BoundGraph, PartiteGround, index_sets

BW = ColorSet(("black", "white"))


def complete(k, n, colors=BW, label="black"):
    return ColoredHypergraph.constant(k, n, colors, label)


def graph(n, black_edges, colors=BW, on="black", off="white", k=2):
    return ColoredHypergraph.from_edge_set(k, n, colors, black_edges, on, off)


def cycle_edges(m):
    return [tuple(sorted((i, i % m + 1))) for i in range(1, m + 1)]


def k3_family():
    return ForbiddenFamily(2, BW, (complete(2, 3),))


def bi_member(n, black_edges, k=2):
    return ColoredHypergraph.from_edge_set(k, n, BI, black_edges, "black", "invisible")


def bi_clique(m, ell=1):
    return BIFamily(2, ell, (bi_member(m, list(itertools.combinations(range(1, m + 1), 2))),))


def random_bound_graph(rng: np.random.Generator, r, k, sizes, lower_colors=2, top_colors=2, structured=False):
    """Random colorings; ``structured`` makes top colors a function of the frame plus rare noise."""
    ground = PartiteGround(tuple(sizes))
    color_sets, coloring = {}, {}
    for I in index_sets(r, k):
        top = len(I) == min(k, r)
        nc = int(rng.integers(1, (top_colors if top else lower_colors) + 1))
        color_sets[I] = tuple(f"c{len(I)}_{j}" for j in range(nc))
        shape = ground.shape(I)
        if structured and len(I) > 1:
            base = np.zeros(shape, dtype=np.int64)
            for J in [J for J in index_sets(r, k) if len(J) == 1 and J[0] in I]:
                ax = I.index(J[0])
                vals = coloring[J].reshape([-1 if a == ax else 1 for a in range(len(I))])
                base = base + vals
            arr = base % nc
        else:
            arr = rng.integers(0, nc, size=shape)
        coloring[I] = arr
    return BoundGraph(ground, k, color_sets, coloring)
