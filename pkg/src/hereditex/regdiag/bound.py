"""Partite bound colored graphs, total colors and relative densities.

Parts, index sets and vertices are 0-based in the Python API. An index
set ``I`` is a sorted tuple of part numbers; a partitionwise edge of
index ``I`` is a tuple of vertex positions aligned with ``I``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from ..errors import InputError, UndefinedDensityError
from ..hypercore import ColorSet, as_colorset


@lru_cache(maxsize=None)
def subsets(index: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Nonempty subsets of ``index`` ordered by size, then lexicographically.

    The last entry is ``index`` itself.
    """
    out = []
    for size in range(1, len(index) + 1):
        out.extend(itertools.combinations(index, size))
    return tuple(out)


def index_sets(r: int, k: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for size in range(1, min(k, r) + 1):
        out.extend(itertools.combinations(range(r), size))
    return tuple(out)


@dataclass(frozen=True)
class PartiteGround:
    """``r`` finite parts with uniform measure on each."""

    part_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(self.part_sizes)
        if not sizes:
            raise InputError("a ground needs at least one part")
        for i, s in enumerate(sizes):
            if not isinstance(s, (int, np.integer)) or isinstance(s, bool) or s < 1:
                raise InputError(f"part {i + 1} must have a positive size, got {s!r}")
        # plain ints keep the exact arithmetic downstream free of overflow
        object.__setattr__(self, "part_sizes", tuple(int(s) for s in sizes))

    @property
    def r(self) -> int:
        return len(self.part_sizes)

    def shape(self, index) -> tuple[int, ...]:
        return tuple(self.part_sizes[i] for i in index)

    def n_edges(self, index) -> int:
        return int(np.prod(self.shape(index), dtype=object))


@dataclass(frozen=True)
class TotalColor:
    """Colors of every nonempty sub-edge of an index-``I`` edge.

    ``components`` follows :func:`subsets` order, so the last component
    is the edge's own color and the rest form its frame color.
    """

    index: tuple[int, ...]
    components: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "index", tuple(self.index))
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != len(subsets(self.index)):
            raise InputError(
                f"total color of index {self.index} needs {len(subsets(self.index))} components, "
                f"got {len(self.components)}"
            )

    @property
    def top(self) -> str:
        return self.components[-1]

    @property
    def frame(self) -> tuple[str, ...]:
        return self.components[:-1]

    def component(self, J) -> str:
        return self.components[subsets(self.index).index(tuple(J))]

    def restrict(self, J) -> "TotalColor":
        J = tuple(J)
        if not set(J) <= set(self.index) or not J:
            raise InputError(f"{J} is not a nonempty subset of {self.index}")
        return TotalColor(J, tuple(self.component(S) for S in subsets(J)))

    def with_top(self, label: str) -> "TotalColor":
        return TotalColor(self.index, self.frame + (label,))


class _IndexTable:
    """Per-index total-color codes and counts."""

    __slots__ = ("index", "codes", "radix", "total_counts", "frame_counts", "size")

    def __init__(self, G: "BoundGraph", index):
        self.index = index
        shape = G.ground.shape(index)
        self.size = int(np.prod(shape))
        radix = []
        code = np.zeros(shape, dtype=np.int64)
        mult = 1
        for J in subsets(index):
            arr = G.coloring[J]
            # broadcast gamma_J over the axes of I
            view = arr.reshape(tuple(G.ground.part_sizes[i] if i in J else 1 for i in index))
            code = code + view * mult
            radix.append(mult)
            mult *= len(G.color_sets[J])
        self.codes = code
        self.radix = tuple(radix)
        top_mult = radix[-1]
        frames = code % top_mult
        vals, counts = np.unique(code, return_counts=True)
        self.total_counts = {int(v): int(c) for v, c in zip(vals, counts)}
        fvals, fcounts = np.unique(frames, return_counts=True)
        self.frame_counts = {int(v): int(c) for v, c in zip(fvals, fcounts)}

    def encode(self, comps: Iterable[int]) -> int:
        return sum(c * m for c, m in zip(comps, self.radix))

    def frame_code(self, code: int) -> int:
        return code % self.radix[-1]


class BoundGraph:
    """A k-bound colored r-partite graph.

    ``color_sets[I]`` lists the colors of index ``I`` and ``coloring[I]``
    is an integer array of shape ``(N_i for i in I)`` holding color
    positions. Every index with ``1 <= |I| <= min(k, r)`` must be present.
    """

    def __init__(self, ground: PartiteGround, k: int, color_sets: Mapping, coloring: Mapping, vertex_ids=None):
        if not isinstance(ground, PartiteGround):
            ground = PartiteGround(tuple(ground))
        if k < 1:
            raise InputError(f"bound k must be >= 1, got {k}")
        self.ground = ground
        self.k = k
        wanted = index_sets(ground.r, k)
        cs = {}
        col = {}
        for I in wanted:
            if I not in color_sets:
                raise InputError(f"missing color set for index {_fmt(I)}")
            if I not in coloring:
                raise InputError(f"missing coloring for index {_fmt(I)}")
            cs[I] = as_colorset(color_sets[I])
            arr = np.asarray(coloring[I], dtype=np.int64)
            if arr.shape != ground.shape(I):
                raise InputError(f"coloring of index {_fmt(I)} has shape {arr.shape}, expected {ground.shape(I)}")
            if arr.size and (arr.min() < 0 or arr.max() >= len(cs[I])):
                raise InputError(f"coloring of index {_fmt(I)} uses a color outside its color set")
            arr = arr.copy()
            arr.setflags(write=False)
            col[I] = arr
        extra = (set(color_sets) | set(coloring)) - set(wanted)
        if extra:
            raise InputError(f"unexpected index {_fmt(sorted(extra)[0])} for r={ground.r}, k={k}")
        self.color_sets = cs
        self.coloring = col
        if vertex_ids is None:
            vertex_ids = tuple(tuple(f"v{j + 1}" for j in range(s)) for s in ground.part_sizes)
        self.vertex_ids = tuple(tuple(ids) for ids in vertex_ids)
        for i, ids in enumerate(self.vertex_ids):
            if len(ids) != ground.part_sizes[i] or len(set(ids)) != len(ids):
                raise InputError(f"part {i + 1} needs {ground.part_sizes[i]} distinct vertex ids")

    @classmethod
    def from_labels(cls, part_sizes, k, color_sets: Mapping, coloring: Mapping) -> "BoundGraph":
        """Build from label arrays: ``coloring[I]`` holds color labels, not positions."""
        ground = PartiteGround(tuple(part_sizes))
        cs = {tuple(I): as_colorset(v) for I, v in color_sets.items()}
        col = {}
        for I, labels in coloring.items():
            I = tuple(I)
            if I not in cs:
                raise InputError(f"missing color set for index {_fmt(I)}")
            arr = np.asarray(labels, dtype=object)
            col[I] = np.vectorize(cs[I].index, otypes=[np.int64])(arr) if arr.size else arr.astype(np.int64)
        return cls(ground, k, cs, col)

    def __eq__(self, other):
        if not isinstance(other, BoundGraph):
            return NotImplemented
        return (
            self.ground == other.ground
            and self.k == other.k
            and self.vertex_ids == other.vertex_ids
            and self.color_sets == other.color_sets
            and all(np.array_equal(self.coloring[I], other.coloring[I]) for I in self.coloring)
        )

    __hash__ = None

    def __repr__(self):
        return f"BoundGraph(parts={list(self.ground.part_sizes)}, k={self.k})"

    @property
    def r(self) -> int:
        return self.ground.r

    @property
    def indices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.coloring)

    def top_indices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(I for I in self.coloring if len(I) == self.k)

    @cached_property
    def tables(self) -> dict:
        return {I: _IndexTable(self, I) for I in self.coloring}

    def decode(self, index, code: int) -> TotalColor:
        table = self.tables[index]
        labels = []
        for J, m in zip(subsets(index), table.radix):
            n = len(self.color_sets[J])
            labels.append(self.color_sets[J].labels[(code // m) % n])
        return TotalColor(index, tuple(labels))

    def encode(self, c: TotalColor) -> int:
        if c.index not in self.tables:
            raise InputError(f"index {_fmt(c.index)} is not an index of this graph")
        comps = [self.color_sets[J].index(lab) for J, lab in zip(subsets(c.index), c.components)]
        return self.tables[c.index].encode(comps)

    def edge_color(self, index, edge) -> str:
        return self.color_sets[tuple(index)].labels[int(self.coloring[tuple(index)][tuple(edge)])]

    def total_colors(self, index=None) -> list[TotalColor]:
        """Realized total colors, of one index or of all indices."""
        idx = [tuple(index)] if index is not None else list(self.coloring)
        return [self.decode(I, code) for I in idx for code in sorted(self.tables[I].total_counts)]

    def edges(self, index):
        return itertools.product(*(range(s) for s in self.ground.shape(index)))


def _fmt(index) -> str:
    return ",".join(str(i + 1) for i in index)


def _as_edge(G: BoundGraph, e):
    pairs = sorted((int(p), int(v)) for p, v in (e.items() if isinstance(e, Mapping) else e))
    parts = [p for p, _ in pairs]
    if len(set(parts)) != len(parts):
        raise InputError(f"edge {pairs} is not partitionwise: a part is used twice")
    if not parts or len(parts) > G.k:
        raise InputError(f"edge {pairs} must have between 1 and k={G.k} vertices")
    for p, v in pairs:
        if not 0 <= p < G.r or not 0 <= v < G.ground.part_sizes[p]:
            raise InputError(f"vertex {v} of part {p} is outside the ground")
    return tuple(parts), tuple(v for _, v in pairs)


def total_color(G: BoundGraph, e) -> TotalColor:
    """Total color of a partitionwise edge given as ``(part, vertex)`` pairs or a mapping."""
    index, verts = _as_edge(G, e)
    pos = dict(zip(index, verts))
    labels = tuple(G.edge_color(J, tuple(pos[j] for j in J)) for J in subsets(index))
    return TotalColor(index, labels)


def relative_density(G: BoundGraph, c: TotalColor) -> Fraction:
    """``P[top color | frame color]`` over edges of ``c.index``, exactly."""
    code = G.encode(c)
    table = G.tables[c.index]
    frame_count = table.frame_counts.get(table.frame_code(code), 0)
    if frame_count == 0:
        raise UndefinedDensityError(f"frame {c.frame} of index {_fmt(c.index)} is realized by no edge")
    return Fraction(table.total_counts.get(code, 0), frame_count)


def density_table(G: BoundGraph) -> dict[tuple, dict[int, Fraction]]:
    """Relative density of every realized total color, keyed by index and code."""
    out = {}
    for I, table in G.tables.items():
        out[I] = {
            code: Fraction(cnt, table.frame_counts[table.frame_code(code)])
            for code, cnt in table.total_counts.items()
        }
    return out


class SubdivisionCheck(NamedTuple):
    ok: bool
    violation: str | None = None


def check_subdivision(G: BoundGraph, Gstar: BoundGraph) -> SubdivisionCheck:
    """Does ``Gstar`` keep the size-k colors of ``G`` and refine all lower ones?"""
    if G.ground != Gstar.ground:
        raise InputError(f"ground mismatch: {G.ground.part_sizes} vs {Gstar.ground.part_sizes}")
    if G.k != Gstar.k:
        raise InputError(f"bound mismatch: k={G.k} vs k={Gstar.k}")
    for I in G.coloring:
        a = G.coloring[I]
        b = Gstar.coloring[I]
        if len(I) == G.k:
            la = np.asarray(G.color_sets[I].labels, dtype=object)[a]
            lb = np.asarray(Gstar.color_sets[I].labels, dtype=object)[b]
            bad = np.argwhere(la != lb)
            if bad.size:
                e = tuple(int(x) for x in bad[0])
                return SubdivisionCheck(False, f"index {_fmt(I)}, edge {e}: size-k color {la[e]!r} became {lb[e]!r}")
            continue
        seen = {}
        for e in itertools.product(*(range(s) for s in G.ground.shape(I))):
            fine = int(b[e])
            coarse = int(a[e])
            if fine in seen and seen[fine][0] != coarse:
                e0 = seen[fine][1]
                return SubdivisionCheck(
                    False,
                    f"index {_fmt(I)}: edges {e0} and {e} share refined color "
                    f"{Gstar.color_sets[I].labels[fine]!r} but have colors "
                    f"{G.color_sets[I].labels[seen[fine][0]]!r} and {G.color_sets[I].labels[coarse]!r}",
                )
            seen.setdefault(fine, (coarse, e))
    return SubdivisionCheck(True)
