"""Exact evaluators over the rationals and the counting oracles used to check them."""

from tutteplane.exact.core import CAPS, EnumerationCapError, EnumerationCaps, TuttePoint, WeightedGraph
from tutteplane.exact.counting import count_perfect_matchings, count_spanning_trees
from tutteplane.exact.delcon import tutte_delcon
from tutteplane.exact.frontier import rank_table, reliability_constant, reliability_frontier, tutte_eval, z_constant, z_frontier
from tutteplane.exact.potts import chromatic_value, potts, potts_conditioned, potts_tutte_check, proper_colourings
from tutteplane.exact.series_parallel import SimplifyResult, parallel_weight, series_weight, simplify_parallel_series
from tutteplane.exact.subsets import ConversionUndefined, reliability_r, subset_table, t_from_z, tutte_bruteforce, z_bruteforce, z_from_t

__all__ = [
    "CAPS",
    "ConversionUndefined",
    "EnumerationCapError",
    "EnumerationCaps",
    "SimplifyResult",
    "TuttePoint",
    "WeightedGraph",
    "chromatic_value",
    "count_perfect_matchings",
    "count_spanning_trees",
    "parallel_weight",
    "potts",
    "potts_conditioned",
    "potts_tutte_check",
    "proper_colourings",
    "rank_table",
    "reliability_constant",
    "reliability_frontier",
    "reliability_r",
    "series_weight",
    "simplify_parallel_series",
    "subset_table",
    "t_from_z",
    "tutte_bruteforce",
    "tutte_delcon",
    "tutte_eval",
    "z_bruteforce",
    "z_constant",
    "z_frontier",
    "z_from_t",
]
