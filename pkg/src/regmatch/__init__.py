"""Perfect matchings in regular bipartite graphs via uniform edge sampling.

Core objects live in regmatch.graph; matching algorithms in
regmatch.matching; sampling in regmatch.sampling; graph families in
regmatch.generators; verification machinery in regmatch.witness and
regmatch.decomposition; the Monte Carlo harness in regmatch.experiments.
"""

from .graph import (BipartiteMultigraph, GraphError, Matching, VertexSet,
                    build_graph, cut_size, read_graph, regular_degree,
                    validate_perfect_matching, write_graph)
from .generators import (LowerBoundMeta, ParameterError, disjoint_union,
                         gen_h_block, gen_lower_bound_family,
                         gen_random_regular, gen_random_regular_simple)
from .matching import (MatchResult, brute_force_max_matching,
                       euler_split_matching, find_perfect_matching,
                       hopcroft_karp)
from .sampling import (SamplingConfig, rate_schedule, sample_edges,
                       upper_bound_rate)
from .witness import (RelevantPair, WitnessEdgeSet,
                      enumerate_minimal_relevant_pairs, extract_hall_violator,
                      minimal_witness_sets, verify_witness_cut_injection,
                      witness_edge_set)
from .decomposition import (DecompositionResult, alpha, brute_force_min_cut,
                            decompose, smallest_low_cut_subset,
                            verify_decomposition)

__version__ = "0.1.0"

__all__ = [
    "BipartiteMultigraph", "GraphError", "Matching", "VertexSet",
    "build_graph", "cut_size", "read_graph", "regular_degree",
    "validate_perfect_matching", "write_graph",
    "LowerBoundMeta", "ParameterError", "disjoint_union", "gen_h_block",
    "gen_lower_bound_family", "gen_random_regular", "gen_random_regular_simple",
    "MatchResult", "brute_force_max_matching", "euler_split_matching",
    "find_perfect_matching", "hopcroft_karp",
    "SamplingConfig", "rate_schedule", "sample_edges", "upper_bound_rate",
    "RelevantPair", "WitnessEdgeSet", "enumerate_minimal_relevant_pairs",
    "extract_hall_violator", "minimal_witness_sets",
    "verify_witness_cut_injection", "witness_edge_set",
    "DecompositionResult", "alpha", "brute_force_min_cut", "decompose",
    "smallest_low_cut_subset", "verify_decomposition",
]
