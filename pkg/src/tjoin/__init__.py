"""Max-min T-join: the largest minimum-cost perfect matching over even
vertex subsets of a metric, with greedy lower bounds and several upper bounds."""

from __future__ import annotations

from .ears import Ear, EarBound, EarDecomposition, best_ear_upper_bound, ear_max, ear_upper_bound
from .errors import InfeasibleError, InputError, SizeLimitError, TJoinError
from .graph import TOL, DistanceMatrix, WeightedGraph, load_edge_list, metric_closure
from .greedy import TJoinBounds, greedy_ordering, prefix_matching_sequence, tjoin_bounds
from .matching import Matching, max_cardinality_matching, min_weight_perfect_matching
from .onetwo import OneTwoInstance, mu_12
from .tsp import Tour, christofides

__all__ = [
    "TOL",
    "DistanceMatrix",
    "Ear",
    "EarBound",
    "EarDecomposition",
    "InfeasibleError",
    "InputError",
    "Matching",
    "OneTwoInstance",
    "SizeLimitError",
    "TJoinBounds",
    "TJoinError",
    "Tour",
    "WeightedGraph",
    "best_ear_upper_bound",
    "christofides",
    "ear_max",
    "ear_upper_bound",
    "greedy_ordering",
    "load_edge_list",
    "max_cardinality_matching",
    "metric_closure",
    "min_weight_perfect_matching",
    "mu_12",
    "prefix_matching_sequence",
    "tjoin_bounds",
]
__version__ = "0.1.0"
