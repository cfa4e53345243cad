"""Ramsey numbers r(C4, B_n): polarity-graph witnesses, verification, bounds and search."""

from .bounds import asymptotic_lower, best_known, formula_bounds, frs_upper, mt_upper, star_upper
from .constructions import build, build_G, build_H, build_tmax_witness
from .finite_field import field_of_order, make_field
from .graph_core import Graph, contains_c4, decode_graph6, encode_graph6, max_book_in_complement
from .projective_plane import build_er_graph
from .witness import WitnessReport, check_extremal_candidate, verify_witness

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "WitnessReport",
    "asymptotic_lower",
    "best_known",
    "build",
    "build_G",
    "build_H",
    "build_er_graph",
    "build_tmax_witness",
    "check_extremal_candidate",
    "contains_c4",
    "decode_graph6",
    "encode_graph6",
    "field_of_order",
    "formula_bounds",
    "frs_upper",
    "make_field",
    "max_book_in_complement",
    "mt_upper",
    "star_upper",
    "verify_witness",
]
