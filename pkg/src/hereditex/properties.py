"""Hereditary and monotone properties given by forbidden families.

``Forb(F)`` holds the colored hypergraphs containing no member of ``F``
as a (color-exact, vertex-deleted and relabeled) subgraph. A monotone
property ``Forb_bi(F)`` is defined over the palette black/white_1..white_l
by members over black/invisible, where only black edges of a member have
to be matched, and only by black host edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._embed import Pattern
from .errors import CapabilityError, InputError
from .hypercore import (
    CANONICAL_CAP,
    ChoiceHypergraph,
    ColoredHypergraph,
    ColorSet,
    Embedding,
    as_colorset,
    canonical_form,
    edge_list,
)

BLACK = "black"
INVISIBLE = "invisible"
BI = ColorSet((BLACK, INVISIBLE))

SELECTION_CAP = 2**24
CHROMATIC_CAP = 10


def bw_colors(ell: int) -> ColorSet:
    """The palette black, white_1, ..., white_ell."""
    if ell < 1:
        raise InputError(f"number of white colors must be >= 1, got {ell}")
    return ColorSet((BLACK,) + tuple(f"white_{i}" for i in range(1, ell + 1)))


def _dedup(members, cap):
    seen = set()
    out = []
    for F in members:
        key = canonical_form(F, cap) if F.n <= cap else F
        if key not in seen:
            seen.add(key)
            out.append(F)
    return tuple(out)


@dataclass(frozen=True)
class ForbiddenFamily:
    """A finite family of forbidden colored hypergraphs.

    Members related by a vertex relabeling are merged on construction
    (first occurrence wins). ``truncated_at`` records a vertex cap when
    the family is a finite truncation of an infinite one.
    """

    k: int
    colors: ColorSet
    members: tuple[ColoredHypergraph, ...] = ()
    truncated_at: int | None = None
    _patterns: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "colors", as_colorset(self.colors))
        for i, F in enumerate(self.members):
            if F.k != self.k or F.colors != self.colors:
                raise InputError(
                    f"family member {i} has k={F.k}, colors {list(F.colors)}; "
                    f"family has k={self.k}, colors {list(self.colors)}"
                )
        object.__setattr__(self, "members", _dedup(self.members, CANONICAL_CAP))
        object.__setattr__(self, "_patterns", tuple(Pattern.exact(F) for F in self.members))

    def __len__(self):
        return len(self.members)

    @property
    def patterns(self) -> tuple[Pattern, ...]:
        return self._patterns

    def check_host(self, H):
        if H.k != self.k:
            raise InputError(f"uniformity mismatch: hypergraph k={H.k}, family k={self.k}")
        if H.colors != self.colors:
            raise InputError(f"color set mismatch: hypergraph {list(H.colors)}, family {list(self.colors)}")


@dataclass(frozen=True)
class BIFamily:
    """Forbidden black-induced patterns over black/invisible, for ``ell`` white colors."""

    k: int
    ell: int
    members: tuple[ColoredHypergraph, ...] = ()

    def __post_init__(self):
        if self.ell < 1:
            raise InputError(f"ell must be >= 1, got {self.ell}")
        for i, F in enumerate(self.members):
            if F.k != self.k:
                raise InputError(f"BI member {i} has k={F.k}, family has k={self.k}")
            if F.colors != BI:
                raise InputError(f"BI member {i} must use colors {list(BI)}, got {list(F.colors)}")
        object.__setattr__(self, "members", _dedup(self.members, CANONICAL_CAP))

    @property
    def colors(self) -> ColorSet:
        return bw_colors(self.ell)

    def __len__(self):
        return len(self.members)


# ---------------------------------------------------------------- membership


def member(H: ColoredHypergraph, fam: ForbiddenFamily) -> bool:
    """True iff no member of ``fam`` occurs in ``H``."""
    fam.check_host(H)
    masks = H.masks
    return all(p.first_embedding(masks, H.n) is None for p in fam.patterns)


def is_good(H: ChoiceHypergraph, fam: ForbiddenFamily, return_witness: bool = False):
    """Is every selection of ``H`` in ``Forb(fam)``?

    A selection fails iff some member ``F`` admits an injection ``phi``
    with ``F(e)`` in ``H(phi(e))`` for all edges ``e`` of ``F``; picking
    ``F``'s colors on the image and anything elsewhere gives the bad
    selection. With ``return_witness=True`` returns ``(ok, witness)``
    where the witness is ``(F, phi)`` or ``None``.
    """
    fam.check_host(H)
    witness = None
    for F, p in zip(fam.members, fam.patterns):
        phi = p.first_embedding(H.choices, H.n)
        if phi is not None:
            witness = (F, phi)
            break
    ok = witness is None
    return (ok, witness) if return_witness else ok


def member_all_selections_oracle(H: ChoiceHypergraph, fam: ForbiddenFamily, cap: int = SELECTION_CAP) -> bool:
    """Goodness by checking every selection; exponential, for testing."""
    fam.check_host(H)
    if H.product > cap:
        raise CapabilityError(f"{H.product} selections exceed the cap of {cap}")
    return all(member(S, fam) for S in H.selections())


def _check_bw(H):
    if BLACK not in H.colors.labels:
        raise InputError(f"host colors {list(H.colors)} have no {BLACK!r}")
    if INVISIBLE in H.colors.labels:
        raise InputError(f"host colors must not contain {INVISIBLE!r}")


def black_pattern(F: ColoredHypergraph, host_colors: ColorSet) -> Pattern:
    if F.colors != BI:
        raise InputError(f"pattern colors must be {list(BI)}, got {list(F.colors)}")
    req = 1 << host_colors.index(BLACK)
    black = BI.index(BLACK)
    edges = [(tuple(v - 1 for v in e), req) for e, c in zip(edge_list(F.n, F.k), F.edges) if c == black]
    return Pattern(F.n, F.k, edges)


def contains_black_induced(H: ColoredHypergraph, F: ColoredHypergraph) -> Embedding | None:
    """Least injection sending every black edge of ``F`` to a black edge of ``H``."""
    _check_bw(H)
    if H.k != F.k:
        raise InputError(f"uniformity mismatch: host k={H.k}, pattern k={F.k}")
    return black_pattern(F, H.colors).first_embedding(H.masks, H.n)


def member_bi(H: ColoredHypergraph, fam: BIFamily) -> bool:
    """Membership in ``Forb_bi(fam)``."""
    if H.colors != fam.colors:
        raise InputError(f"host colors {list(H.colors)} differ from {list(fam.colors)}")
    return all(contains_black_induced(H, F) is None for F in fam.members)


def bi_recolorings(F: ColoredHypergraph, ell: int):
    """Yield every BW recoloring of the invisible edges of ``F``."""
    if F.colors != BI:
        raise InputError(f"pattern colors must be {list(BI)}, got {list(F.colors)}")
    bw = bw_colors(ell)
    black = BI.index(BLACK)
    free = [r for r, c in enumerate(F.edges) if c != black]
    for choice in itertools.product(range(len(bw)), repeat=len(free)):
        word = [0] * len(F.edges)  # black is index 0 in both palettes
        for r, c in zip(free, choice):
            word[r] = c
        yield ColoredHypergraph(F.k, F.n, bw, tuple(word))


def expand_bi_family(fam: BIFamily) -> ForbiddenFamily:
    """All BW recolorings of the invisible edges of each member.

    ``Forb_bi(fam) == Forb(expand_bi_family(fam))``. Recolorings that are
    relabelings of one another are merged.
    """
    out = [G for F in fam.members for G in bi_recolorings(F, fam.ell)]
    return ForbiddenFamily(fam.k, fam.colors, tuple(out))


# ---------------------------------------------------------------- chromatic number


def chromatic_number(F: ColoredHypergraph, cap: int = CHROMATIC_CAP) -> int:
    """Chromatic number of the graph formed by the black edges of ``F`` (k=2)."""
    if F.k != 2:
        raise CapabilityError(f"chromatic number is only supported for k=2, got k={F.k}")
    if F.n > cap:
        raise CapabilityError(f"chromatic number is capped at {cap} vertices, got {F.n}")
    if BLACK not in F.colors.labels:
        raise InputError(f"pattern colors {list(F.colors)} have no {BLACK!r}")
    if F.n == 0:
        return 0
    black = F.colors.index(BLACK)
    adj = [set() for _ in range(F.n + 1)]
    for (u, v), c in zip(edge_list(F.n, 2), F.edges):
        if c == black:
            adj[u].add(v)
            adj[v].add(u)
    order = sorted(range(1, F.n + 1), key=lambda v: -len(adj[v]))
    for colors in range(1, F.n + 1):
        if _colorable(order, adj, colors):
            return colors
    raise AssertionError("unreachable: n colors always suffice")


def _colorable(order, adj, colors):
    assign = {}

    def place(i):
        if i == len(order):
            return True
        v = order[i]
        taken = {assign[u] for u in adj[v] if u in assign}
        # new color classes are interchangeable; open at most one more
        limit = min(colors, max(assign.values(), default=-1) + 2)
        for c in range(limit):
            if c not in taken:
                assign[v] = c
                if place(i + 1):
                    return True
                del assign[v]
        return False

    return place(0)
