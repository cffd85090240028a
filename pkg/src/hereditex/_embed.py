"""Backtracking search for pattern embeddings into masked hosts.

A host is a sequence of bitmasks indexed by colex edge rank. A pattern
edge with requirement ``req`` is satisfied by a host edge with mask ``m``
when ``req & m`` is nonzero. With singleton masks on both sides this is
exact color matching; with choice masks on the host it is the choice
embedding used for goodness; a pattern that only constrains some of its
edges gives black-induced containment.

Host edges with rank above ``limit`` are treated as unassigned: a
constrained pattern edge may never land on them.
"""

from __future__ import annotations

import itertools

from .hypercore import rank_table


class Pattern:
    __slots__ = ("m", "k", "edges", "_by_last", "_plans")

    def __init__(self, m: int, k: int, edges):
        self.m = m
        self.k = k
        # (sorted 0-based vertex tuple, requirement mask); unconstrained edges are omitted
        self.edges = tuple(edges)
        by_last = [[] for _ in range(m)]
        for verts, req in self.edges:
            by_last[verts[-1]].append((verts, req))
        self._by_last = by_last
        self._plans = None

    @classmethod
    def exact(cls, F) -> "Pattern":
        from .hypercore import edge_list

        return cls(F.n, F.k, [(tuple(v - 1 for v in e), 1 << c) for e, c in zip(edge_list(F.n, F.k), F.edges)])

    @property
    def unconstrained(self) -> bool:
        return not self.edges

    # -------------------------------------------------------------- lex-first

    def first_embedding(self, host, n, limit=None):
        m = self.m
        if m > n:
            return None
        if limit is None:
            limit = len(host) - 1
        table = rank_table(n, self.k)
        by_last = self._by_last
        phi = [0] * m
        used = [False] * (n + 1)

        def ok(i):
            for verts, req in by_last[i]:
                r = table[tuple(sorted(phi[j] for j in verts))]
                if r > limit or not host[r] & req:
                    return False
            return True

        def dfs(i):
            if i == m:
                return True
            for v in range(1, n + 1):
                if used[v]:
                    continue
                phi[i] = v
                if ok(i):
                    used[v] = True
                    if dfs(i + 1):
                        return True
                    used[v] = False
            return False

        return tuple(phi) if dfs(0) else None

    # -------------------------------------------------------------- anchored

    def _build_plans(self):
        plans = []
        for idx, (f, req) in enumerate(self.edges):
            order = list(f) + [v for v in range(self.m) if v not in f]
            pos = {v: i for i, v in enumerate(order)}
            checks = [[] for _ in range(self.m)]
            for j, (verts, r) in enumerate(self.edges):
                if j == idx:
                    continue
                at = max(pos[v] for v in verts)
                checks[at].append((tuple(pos[v] for v in verts), r))
            plans.append((req, checks))
        self._plans = plans
        return plans

    def anchored_exists(self, host, n, limit, anchor, anchor_mask) -> bool:
        """Is there an embedding mapping some constrained edge onto ``anchor``?

        ``anchor`` is a sorted vertex tuple. Only the new violations an
        incremental search needs to see are found this way.
        """
        m, k = self.m, self.k
        if m > n:
            return False
        plans = self._plans or self._build_plans()
        table = rank_table(n, k)
        anchor_set = set(anchor)
        for req, checks in plans:
            if not req & anchor_mask:
                continue
            for head in itertools.permutations(anchor):
                img = list(head) + [0] * (m - k)
                ok = True
                for i in range(k):
                    for verts, r in checks[i]:
                        rank = table[tuple(sorted(img[j] for j in verts))]
                        if rank > limit or not host[rank] & r:
                            ok = False
                            break
                    if not ok:
                        break
                if ok and _extend(img, k, m, n, checks, host, table, limit, set(anchor_set)):
                    return True
        return False


def _extend(img, i, m, n, checks, host, table, limit, used):
    if i == m:
        return True
    for v in range(1, n + 1):
        if v in used:
            continue
        img[i] = v
        good = True
        for verts, r in checks[i]:
            rank = table[tuple(sorted(img[j] for j in verts))]
            if rank > limit or not host[rank] & r:
                good = False
                break
        if good:
            used.add(v)
            if _extend(img, i + 1, m, n, checks, host, table, limit, used):
                return True
            used.discard(v)
    return False
