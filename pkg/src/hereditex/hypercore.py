"""Colored k-uniform hypergraphs on labeled vertex sets.

Vertices are ``1..n``. Edges (k-subsets) are stored as flat tuples
indexed by colexicographic rank, so growing ``n`` never changes the rank
of an existing edge. A colored hypergraph stores one color index per
edge; a choice hypergraph stores a nonempty bitmask of color indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import CapabilityError, InputError

CANONICAL_CAP = 8

Embedding = tuple  # image of pattern vertex i+1 at position i


@dataclass(frozen=True)
class ColorSet:
    """Ordered, labeled colors. Position is the color index."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise InputError("a color set needs at least one color")
        if len(set(labels)) != len(labels):
            raise InputError(f"duplicate color labels in {list(labels)}")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise InputError(f"color labels must be nonempty strings, got {lab!r}")

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown color {label!r}; expected one of {list(self.labels)}") from None

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for lab in labels:
            mask |= 1 << self.index(lab)
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(lab for i, lab in enumerate(self.labels) if mask >> i & 1)


def as_colorset(colors) -> ColorSet:
    return colors if isinstance(colors, ColorSet) else ColorSet(tuple(colors))


# ---------------------------------------------------------------- edge ranks


def rank_edge(subset: Sequence[int], n: int | None = None) -> int:
    """Colexicographic rank of a strictly increasing k-subset of ``[n]``.

    >>> rank_edge((1, 3))
    1
    >>> rank_edge((3, 4, 5), n=5)
    9
    """
    prev = 0
    total = 0
    for i, a in enumerate(subset, start=1):
        if not isinstance(a, int) or isinstance(a, bool):
            raise InputError(f"edge {tuple(subset)}: vertices must be integers")
        if a <= prev:
            raise InputError(f"edge {tuple(subset)} is not strictly increasing")
        if n is not None and a > n:
            raise InputError(f"edge {tuple(subset)} has a vertex outside [1,{n}]")
        total += comb(a - 1, i)
        prev = a
    if subset and subset[0] < 1:
        raise InputError(f"edge {tuple(subset)} has a vertex below 1")
    return total


def unrank_edge(rank: int, k: int) -> tuple[int, ...]:
    """Inverse of :func:`rank_edge`."""
    if rank < 0:
        raise InputError(f"rank must be nonnegative, got {rank}")
    out = []
    for i in range(k, 0, -1):
        # largest a with comb(a-1, i) <= rank
        a = i
        while comb(a, i) <= rank:
            a += 1
        rank -= comb(a - 1, i)
        out.append(a)
    return tuple(reversed(out))


@lru_cache(maxsize=None)
def edge_list(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All k-subsets of ``[n]`` in colex order."""
    if k < 1 or n < 0:
        raise InputError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    subsets = itertools.combinations(range(1, n + 1), k)
    return tuple(sorted(subsets, key=lambda e: e[::-1]))


@lru_cache(maxsize=None)
def rank_table(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(edge_list(n, k))}


def _mask_word(n, k, mapping, colors, what):
    """Read a full edge -> value mapping into rank order."""
    table = rank_table(n, k)
    word = [None] * len(table)
    for key, value in mapping.items():
        edge = tuple(sorted(key))
        if len(edge) != k or edge not in table:
            raise InputError(f"{what}: {tuple(key)} is not a {k}-subset of [1,{n}]")
        if len(set(key)) != len(key):
            raise InputError(f"{what}: edge {tuple(key)} repeats a vertex")
        if word[table[edge]] is not None:
            raise InputError(f"{what}: edge {edge} given twice")
        word[table[edge]] = value
    missing = [edge_list(n, k)[i] for i, v in enumerate(word) if v is None]
    if missing:
        raise InputError(f"{what}: no color for edge {missing[0]} ({len(missing)} missing)")
    return word


# ---------------------------------------------------------------- hypergraphs


@dataclass(frozen=True)
class ColoredHypergraph:
    """A total coloring of the k-subsets of ``[n]``.

    ``edges[r]`` is the color index of the edge of colex rank ``r``.
    """

    k: int
    n: int
    colors: ColorSet
    edges: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", as_colorset(self.colors))
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.k < 1:
            raise InputError(f"uniformity k must be >= 1, got {self.k}")
        if self.n < 0:
            raise InputError(f"vertex count must be >= 0, got {self.n}")
        expected = comb(self.n, self.k)
        if len(self.edges) != expected:
            raise InputError(f"expected {expected} edge colors for n={self.n}, k={self.k}, got {len(self.edges)}")
        c = len(self.colors)
        for r, col in enumerate(self.edges):
            if not isinstance(col, int) or not 0 <= col < c:
                raise InputError(f"edge {unrank_edge(r, self.k)}: color index {col!r} out of range")

    @classmethod
    def from_mapping(cls, k: int, n: int, colors, mapping: Mapping) -> "ColoredHypergraph":
        """Build from ``{edge tuple: color label}`` covering every k-subset."""
        colors = as_colorset(colors)
        word = _mask_word(n, k, mapping, colors, "colored hypergraph")
        return cls(k, n, colors, tuple(colors.index(lab) for lab in word))

    @classmethod
    def constant(cls, k: int, n: int, colors, label: str) -> "ColoredHypergraph":
        colors = as_colorset(colors)
        return cls(k, n, colors, (colors.index(label),) * comb(n, k))

    @classmethod
    def from_edge_set(cls, k: int, n: int, colors, marked: Iterable, on: str, off: str) -> "ColoredHypergraph":
        """Color the listed edges ``on`` and all others ``off``."""
        colors = as_colorset(colors)
        table = rank_table(n, k)
        word = [colors.index(off)] * len(table)
        on_idx = colors.index(on)
        for e in marked:
            key = tuple(sorted(e))
            if key not in table:
                raise InputError(f"{tuple(e)} is not a {k}-subset of [1,{n}]")
            word[table[key]] = on_idx
        return cls(k, n, colors, tuple(word))

    def color(self, edge: Sequence[int]) -> str:
        return self.colors.labels[self.edges[rank_edge(tuple(sorted(edge)), self.n)]]

    def as_mapping(self) -> dict[tuple[int, ...], str]:
        labels = self.colors.labels
        return {e: labels[c] for e, c in zip(edge_list(self.n, self.k), self.edges)}

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(1 << c for c in self.edges)

    def relabel(self, perm: Sequence[int]) -> "ColoredHypergraph":
        """Vertex ``v`` of ``self`` becomes vertex ``perm[v-1]``."""
        _check_perm(perm, self.n)
        return ColoredHypergraph(self.k, self.n, self.colors, _permute_word(self.edges, perm, self.n, self.k))


@dataclass(frozen=True)
class ChoiceHypergraph:
    """Each k-subset carries a nonempty set of allowed colors (a bitmask)."""

    k: int
    n: int
    colors: ColorSet
    choices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", as_colorset(self.colors))
        object.__setattr__(self, "choices", tuple(self.choices))
        if self.k < 1 or self.n < 0:
            raise InputError(f"need k >= 1 and n >= 0, got k={self.k}, n={self.n}")
        expected = comb(self.n, self.k)
        if len(self.choices) != expected:
            raise InputError(f"expected {expected} choice sets for n={self.n}, k={self.k}, got {len(self.choices)}")
        full = self.colors.full_mask
        for r, m in enumerate(self.choices):
            if not isinstance(m, int) or m <= 0 or m & ~full:
                raise InputError(f"edge {unrank_edge(r, self.k)}: choice set must be a nonempty subset of the colors")

    @classmethod
    def from_mapping(cls, k: int, n: int, colors, mapping: Mapping) -> "ChoiceHypergraph":
        """Build from ``{edge tuple: iterable of color labels}``."""
        colors = as_colorset(colors)
        word = _mask_word(n, k, mapping, colors, "choice hypergraph")
        masks = []
        for e, labs in zip(edge_list(n, k), word):
            labs = list(labs)
            if not labs:
                raise InputError(f"choice hypergraph: edge {e} has an empty choice set")
            masks.append(colors.mask_of(labs))
        return cls(k, n, colors, tuple(masks))

    @classmethod
    def from_colored(cls, H: ColoredHypergraph) -> "ChoiceHypergraph":
        return cls(H.k, H.n, H.colors, H.masks)

    def choice(self, edge: Sequence[int]) -> tuple[str, ...]:
        return self.colors.labels_of(self.choices[rank_edge(tuple(sorted(edge)), self.n)])

    def as_mapping(self) -> dict[tuple[int, ...], tuple[str, ...]]:
        return {e: self.colors.labels_of(m) for e, m in zip(edge_list(self.n, self.k), self.choices)}

    @property
    def product(self) -> int:
        """``prod_e |H(e)|`` as an exact integer."""
        out = 1
        for m in self.choices:
            out *= m.bit_count()
        return out

    def selections(self) -> Iterable[ColoredHypergraph]:
        """Every colored hypergraph obtained by picking one color per edge."""
        options = [[i for i in range(len(self.colors)) if m >> i & 1] for m in self.choices]
        for word in itertools.product(*options):
            yield ColoredHypergraph(self.k, self.n, self.colors, word)


# ---------------------------------------------------------------- operations


def _check_perm(perm, n):
    if sorted(perm) != list(range(1, n + 1)):
        raise InputError(f"{list(perm)} is not a permutation of [1,{n}]")


def _permute_word(word, perm, n, k):
    table = rank_table(n, k)
    out = [None] * len(word)
    for e, value in zip(edge_list(n, k), word):
        out[table[tuple(sorted(perm[v - 1] for v in e))]] = value
    return tuple(out)


def induced_subgraph(H: ColoredHypergraph, verts: Iterable[int]) -> ColoredHypergraph:
    """Restrict ``H`` to ``verts``, relabeled ``1..len(verts)`` in order."""
    vs = sorted(set(verts))
    if any(not isinstance(v, int) or not 1 <= v <= H.n for v in vs):
        raise InputError(f"vertices {vs} are not a subset of [1,{H.n}]")
    table = rank_table(H.n, H.k)
    word = tuple(H.edges[table[tuple(vs[i - 1] for i in e)]] for e in edge_list(len(vs), H.k))
    return ColoredHypergraph(H.k, len(vs), H.colors, word)


def _require_compatible(H, F):
    if H.k != F.k:
        raise InputError(f"uniformity mismatch: host k={H.k}, pattern k={F.k}")
    if H.colors != F.colors:
        raise InputError(f"color set mismatch: host {list(H.colors)}, pattern {list(F.colors)}")


def find_embedding(H: ColoredHypergraph, F: ColoredHypergraph) -> Embedding | None:
    """Lexicographically least injection of ``F`` into ``H`` preserving every edge color."""
    from ._embed import Pattern

    _require_compatible(H, F)
    return Pattern.exact(F).first_embedding(H.masks, H.n)


def canonical_form(H: ColoredHypergraph, cap: int = CANONICAL_CAP) -> ColoredHypergraph:
    """Relabeling with the least edge-color word (in colex edge order)."""
    if H.n > cap:
        raise CapabilityError(f"canonical form is capped at {cap} vertices, got n={H.n}")
    best = H.edges
    if H.n >= H.k:
        for perm in itertools.permutations(range(1, H.n + 1)):
            w = _permute_word(H.edges, perm, H.n, H.k)
            if w < best:
                best = w
    return ColoredHypergraph(H.k, H.n, H.colors, best)
