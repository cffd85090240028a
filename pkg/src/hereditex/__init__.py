"""Exact extremal values, labeled counts and partite regularity diagnostics
for hereditary properties of colored hypergraphs."""

from .budget import SearchBudget
from .census import CensusRow, count_brute_oracle, count_property, format_trend, trend_report
from .errors import (
    BudgetExhausted,
    CapabilityError,
    EmptyPropertyError,
    HereditexError,
    InconsistencyError,
    InputError,
    UndefinedDensityError,
)
from .extremal import ExtremalResult, erdos_stone_value, ex_brute_oracle, ex_exact, monotone_ex
from .hypercore import (
    ChoiceHypergraph,
    ColoredHypergraph,
    ColorSet,
    canonical_form,
    edge_list,
    find_embedding,
    induced_subgraph,
    rank_edge,
    unrank_edge,
)
from .properties import (
    BI,
    BIFamily,
    ForbiddenFamily,
    bw_colors,
    chromatic_number,
    contains_black_induced,
    expand_bi_family,
    is_good,
    member,
    member_all_selections_oracle,
    member_bi,
)

__version__ = "0.1.0"

__all__ = [
    "SearchBudget", "CensusRow", "count_brute_oracle", "count_property", "format_trend", "trend_report",
    "BudgetExhausted", "CapabilityError", "EmptyPropertyError", "HereditexError", "InconsistencyError",
    "InputError", "UndefinedDensityError", "ExtremalResult", "erdos_stone_value", "ex_brute_oracle",
    "ex_exact", "monotone_ex", "ChoiceHypergraph", "ColoredHypergraph", "ColorSet", "canonical_form",
    "edge_list", "find_embedding", "induced_subgraph", "rank_edge", "unrank_edge", "BI", "BIFamily",
    "ForbiddenFamily", "bw_colors", "chromatic_number", "contains_black_induced", "expand_bi_family",
    "is_good", "member", "member_all_selections_oracle", "member_bi",
]
