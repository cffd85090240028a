"""JSON text formats for every object the command line reads or writes.

Edge keys are comma-joined increasing vertices (``"1,2"``); bound-graph
index keys are comma-joined 1-based parts and edge keys are bar-joined
vertex ids in part order (``"v1|v2"``). Exact numbers are written as
integers or ``"p/q"`` strings; decimals in input are read exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import InputError
from .hypercore import ChoiceHypergraph, ColoredHypergraph, ColorSet, edge_list
from .properties import BI, BIFamily, ForbiddenFamily
from .regdiag.bound import BoundGraph, PartiteGround, TotalColor, index_sets, subsets
from .regdiag.regularity import INVISIBLE, Complex, DeltaFunction


def load(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from None
    return loads(text, where=str(path))


def loads(text: str, where: str = "<input>") -> object:
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=_default)


def _default(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, np.integer):
        return int(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def number(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"{where}: expected a number or 'p/q' string, got {value!r}")


def _require(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    if key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    value = obj[key]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise InputError(f"{where}.{key}: expected an integer, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise InputError(f"{where}.{key}: expected a list")
    if kind is dict and not isinstance(value, dict):
        raise InputError(f"{where}.{key}: expected an object")
    return value


def _edge_key(e) -> str:
    return ",".join(str(v) for v in e)


def _parse_edge_key(key: str, where: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in key.split(","))
    except ValueError:
        raise InputError(f"{where}: edge key {key!r} is not a comma-joined vertex list") from None


def _colors(obj, where) -> ColorSet:
    labels = _require(obj, "colors", where, list)
    try:
        return ColorSet(tuple(labels))
    except InputError as exc:
        raise InputError(f"{where}.colors: {exc}") from None


# ---------------------------------------------------------------- hypergraphs


def graph_to_json(H: ColoredHypergraph) -> dict:
    return {
        "k": H.k,
        "colors": list(H.colors),
        "n": H.n,
        "edges": {_edge_key(e): lab for e, lab in H.as_mapping().items()},
    }


def _edges_mapping(obj, where, value_check):
    edges = _require(obj, "edges", where, dict)
    mapping = {}
    for key, value in edges.items():
        mapping[_parse_edge_key(key, f"{where}.edges")] = value_check(value, f"{where}.edges[{key!r}]")
    return mapping


def graph_from_json(obj, where: str = "graph", k=None, colors=None) -> ColoredHypergraph:
    k = _require(obj, "k", where, int) if k is None or "k" in obj else k
    colors = _colors(obj, where) if colors is None or "colors" in obj else colors
    n = _require(obj, "n", where, int)

    def check(value, loc):
        if not isinstance(value, str):
            raise InputError(f"{loc}: expected a color label, got {value!r}")
        return value

    mapping = _edges_mapping(obj, where, check)
    try:
        return ColoredHypergraph.from_mapping(k, n, colors, mapping)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def choice_to_json(H: ChoiceHypergraph) -> dict:
    return {
        "k": H.k,
        "colors": list(H.colors),
        "n": H.n,
        "edges": {_edge_key(e): list(labs) for e, labs in H.as_mapping().items()},
    }


def choice_from_json(obj, where: str = "choice graph") -> ChoiceHypergraph:
    k = _require(obj, "k", where, int)
    colors = _colors(obj, where)
    n = _require(obj, "n", where, int)

    def check(value, loc):
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise InputError(f"{loc}: expected a list of color labels, got {value!r}")
        return value

    mapping = _edges_mapping(obj, where, check)
    try:
        return ChoiceHypergraph.from_mapping(k, n, colors, mapping)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def family_to_json(fam: ForbiddenFamily) -> dict:
    out = {"k": fam.k, "colors": list(fam.colors), "graphs": [graph_to_json(F) for F in fam.members]}
    if fam.truncated_at is not None:
        out["truncatedAt"] = fam.truncated_at
    return out


def family_from_json(obj, where: str = "family") -> ForbiddenFamily:
    k = _require(obj, "k", where, int)
    colors = _colors(obj, where)
    graphs = _require(obj, "graphs", where, list)
    members = tuple(graph_from_json(g, f"{where}.graphs[{i}]", k, colors) for i, g in enumerate(graphs))
    trunc = obj.get("truncatedAt")
    if trunc is not None and (not isinstance(trunc, int) or isinstance(trunc, bool)):
        raise InputError(f"{where}.truncatedAt: expected an integer")
    try:
        return ForbiddenFamily(k, colors, members, trunc)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def bi_family_to_json(fam: BIFamily) -> dict:
    return {"k": fam.k, "colors": list(BI), "ell": fam.ell, "graphs": [graph_to_json(F) for F in fam.members]}


def bi_family_from_json(obj, where: str = "BI family") -> BIFamily:
    k = _require(obj, "k", where, int)
    ell = _require(obj, "ell", where, int)
    colors = _colors(obj, where) if "colors" in obj else BI
    if colors != BI:
        raise InputError(f"{where}.colors: a BI family must use {list(BI)}")
    graphs = _require(obj, "graphs", where, list)
    members = tuple(graph_from_json(g, f"{where}.graphs[{i}]", k, BI) for i, g in enumerate(graphs))
    try:
        return BIFamily(k, ell, members)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


# ---------------------------------------------------------------- bound graphs


def _index_key(I) -> str:
    return ",".join(str(i + 1) for i in I)


def _parse_index_key(key: str, r: int, where: str):
    try:
        I = tuple(int(p) - 1 for p in key.split(","))
    except ValueError:
        raise InputError(f"{where}: index key {key!r} is not a comma-joined part list") from None
    if list(I) != sorted(set(I)) or any(not 0 <= i < r for i in I):
        raise InputError(f"{where}: index key {key!r} must list increasing parts in [1,{r}]")
    return I


def bound_graph_to_json(G: BoundGraph) -> dict:
    out = {
        "r": G.r,
        "k": G.k,
        "partSizes": list(G.ground.part_sizes),
        "colorSets": {_index_key(I): list(cs) for I, cs in G.color_sets.items()},
        "coloring": {},
    }
    default_ids = tuple(tuple(f"v{j + 1}" for j in range(s)) for s in G.ground.part_sizes)
    if G.vertex_ids != default_ids:
        out["vertexIds"] = {str(i + 1): list(ids) for i, ids in enumerate(G.vertex_ids)}
    for I, arr in G.coloring.items():
        labels = G.color_sets[I].labels
        out["coloring"][_index_key(I)] = {
            "|".join(G.vertex_ids[i][v] for i, v in zip(I, e)): labels[int(arr[e])] for e in G.edges(I)
        }
    return out


def bound_graph_from_json(obj, where: str = "bound graph") -> BoundGraph:
    r = _require(obj, "r", where, int)
    k = _require(obj, "k", where, int)
    sizes = _require(obj, "partSizes", where, list)
    if len(sizes) != r:
        raise InputError(f"{where}.partSizes: expected {r} sizes, got {len(sizes)}")
    try:
        ground = PartiteGround(tuple(sizes))
    except InputError as exc:
        raise InputError(f"{where}.partSizes: {exc}") from None
    if k < 1:
        raise InputError(f"{where}.k: must be >= 1")
    ids = tuple(tuple(f"v{j + 1}" for j in range(s)) for s in sizes)
    if "vertexIds" in obj:
        raw = _require(obj, "vertexIds", where, dict)
        ids = list(ids)
        for key, lst in raw.items():
            (i,) = _parse_index_key(key, r, f"{where}.vertexIds")
            if not isinstance(lst, list) or len(lst) != sizes[i] or not all(isinstance(x, str) for x in lst):
                raise InputError(f"{where}.vertexIds[{key!r}]: expected {sizes[i]} string ids")
            ids[i] = tuple(lst)
        ids = tuple(ids)
    lookup = [{vid: j for j, vid in enumerate(part)} for part in ids]
    raw_cs = _require(obj, "colorSets", where, dict)
    raw_col = _require(obj, "coloring", where, dict)
    color_sets = {}
    for key, labels in raw_cs.items():
        I = _parse_index_key(key, r, f"{where}.colorSets")
        if not isinstance(labels, list):
            raise InputError(f"{where}.colorSets[{key!r}]: expected a list of labels")
        try:
            color_sets[I] = ColorSet(tuple(labels))
        except InputError as exc:
            raise InputError(f"{where}.colorSets[{key!r}]: {exc}") from None
    coloring = {}
    for key, edges in raw_col.items():
        I = _parse_index_key(key, r, f"{where}.coloring")
        loc = f"{where}.coloring[{key!r}]"
        if I not in color_sets:
            raise InputError(f"{loc}: no color set for this index")
        if not isinstance(edges, dict):
            raise InputError(f"{loc}: expected an object of edge colors")
        arr = np.full(ground.shape(I), -1, dtype=np.int64)
        for ekey, label in edges.items():
            parts = ekey.split("|")
            if len(parts) != len(I):
                raise InputError(f"{loc}: edge {ekey!r} needs {len(I)} bar-joined vertex ids")
            pos = []
            for i, vid in zip(I, parts):
                if vid not in lookup[i]:
                    raise InputError(f"{loc}: edge {ekey!r} names unknown vertex {vid!r} of part {i + 1}")
                pos.append(lookup[i][vid])
            if not isinstance(label, str):
                raise InputError(f"{loc}[{ekey!r}]: expected a color label")
            try:
                arr[tuple(pos)] = color_sets[I].index(label)
            except InputError as exc:
                raise InputError(f"{loc}[{ekey!r}]: {exc}") from None
        missing = np.argwhere(arr < 0)
        if missing.size:
            e = missing[0]
            name = "|".join(ids[i][int(v)] for i, v in zip(I, e))
            raise InputError(f"{loc}: no color for edge {name!r} ({len(missing)} missing)")
        coloring[I] = arr
    try:
        return BoundGraph(ground, k, color_sets, coloring, ids)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def total_color_to_json(c: TotalColor) -> dict:
    return {
        "index": _index_key(c.index),
        "components": {_index_key(J): lab for J, lab in zip(subsets(c.index), c.components)},
    }


def total_color_from_json(obj, r: int, where: str) -> TotalColor:
    I = _parse_index_key(_require(obj, "index", where), r, f"{where}.index")
    comps = _require(obj, "components", where, dict)
    labels = []
    for J in subsets(I):
        key = _index_key(J)
        if key not in comps:
            raise InputError(f"{where}.components: missing component {key!r}")
        labels.append(comps[key])
    extra = set(comps) - {_index_key(J) for J in subsets(I)}
    if extra:
        raise InputError(f"{where}.components: {sorted(extra)[0]!r} is not a subset of index {_index_key(I)}")
    return TotalColor(I, tuple(labels))


def delta_to_json(delta: DeltaFunction) -> list:
    return [dict(total_color_to_json(c), value=v) for c, v in delta.items()]


def delta_from_json(obj, G: BoundGraph, where: str = "delta") -> DeltaFunction:
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list of records")
    values = {}
    for i, rec in enumerate(obj):
        loc = f"{where}[{i}]"
        c = total_color_from_json(rec, G.r, loc)
        try:
            G.encode(c)
        except InputError as exc:
            raise InputError(f"{loc}: {exc}") from None
        v = number(_require(rec, "value", loc), f"{loc}.value")
        if v < 0:
            raise InputError(f"{loc}.value: must be nonnegative")
        if c in values:
            raise InputError(f"{loc}: total color listed twice")
        values[c] = v
    return DeltaFunction(values)


def complex_to_json(S: Complex, G: BoundGraph) -> dict:
    cells = {}
    for I, arr in S.cells.items():
        labels = G.color_sets[I].labels
        cells[_index_key(I)] = {
            "|".join(f"w{s + 1}" for s in slots): (None if arr[slots] == INVISIBLE else labels[int(arr[slots])])
            for slots in np.ndindex(arr.shape)
        }
    return {"r": S.r, "k": S.k, "h": S.h, "cells": cells}


def complex_from_json(obj, G: BoundGraph, where: str = "complex") -> Complex:
    r = _require(obj, "r", where, int)
    k = _require(obj, "k", where, int)
    h = _require(obj, "h", where, int)
    if r != G.r or not 1 <= k <= G.k or h < 1:
        raise InputError(f"{where}: needs r={G.r}, 1 <= k <= {G.k}, h >= 1")
    raw = _require(obj, "cells", where, dict)
    cells = {}
    for I in index_sets(r, k):
        key = _index_key(I)
        loc = f"{where}.cells[{key!r}]"
        if key not in raw or not isinstance(raw[key], dict):
            raise InputError(f"{loc}: missing")
        arr = np.full((h,) * len(I), INVISIBLE, dtype=np.int64)
        for ekey, label in raw[key].items():
            try:
                slots = tuple(int(p[1:]) - 1 for p in ekey.split("|"))
            except ValueError:
                raise InputError(f"{loc}: bad edge key {ekey!r}") from None
            if len(slots) != len(I) or any(not 0 <= s < h for s in slots):
                raise InputError(f"{loc}: bad edge key {ekey!r}")
            if label is not None:
                arr[slots] = G.color_sets[I].index(label)
        cells[I] = arr
    return Complex(r, k, h, cells)
