"""Partite regularity diagnostics: densities, subdivisions, (eps, h)-regularity,
exceptional total colors and the goodified choice graph."""

from .bound import (
    BoundGraph,
    PartiteGround,
    SubdivisionCheck,
    TotalColor,
    check_subdivision,
    density_table,
    index_sets,
    relative_density,
    subsets,
    total_color,
)
from .exceptional import ExceptionalReport, GoodifiedGraph, build_goodified, detect_exceptional, exceptional_bound
from .regularity import (
    Complex,
    DeltaFunction,
    ProbabilityEstimate,
    RegularityReport,
    check_regularity,
    embed_probability,
    enumerate_complexes,
    fit_delta,
    hoeffding_radius,
)

__all__ = [
    "BoundGraph", "PartiteGround", "SubdivisionCheck", "TotalColor", "check_subdivision", "density_table",
    "index_sets", "relative_density", "subsets", "total_color", "ExceptionalReport", "GoodifiedGraph",
    "build_goodified", "detect_exceptional", "exceptional_bound", "Complex", "DeltaFunction",
    "ProbabilityEstimate", "RegularityReport", "check_regularity", "embed_probability",
    "enumerate_complexes", "fit_delta", "hoeffding_radius",
]
