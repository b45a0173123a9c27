"""Local access to sparse connected subgraphs.

Per-edge membership queries against a sparse connected subgraph of a
probe-accessible input graph, plus the offline oracles and verification
suites that back them.
"""

from .engine import (
    EdgeDecision,
    LscgConfig,
    MaterializeResult,
    graph_is_connected,
    is_connected,
    lambda_value,
    materialize_subgraph,
    query_edge,
)
from .graph import (
    EdgeRef,
    Graph,
    GraphFormatError,
    InvalidIndexError,
    InvalidVertexError,
    ProbedView,
    ProbeStats,
    load_edge_list,
)
from .oracle import (
    CutResult,
    brute_force_strong_connectivities,
    enumerate_cut_values,
    exact_strong_connectivities,
    min_cut,
    verify_sparsification,
)
from .randomness import RandomStream, StreamKey, derive, edge_uniform
from .skeleton import SkeletonState, SkeletonTrace, new_skeleton
from .suites import SUITE_NAMES, run_suite, scaling_experiment
from .tester import (
    InvalidEdgeError,
    TesterConfig,
    TesterOutcome,
    lambda_prime,
    round_budget,
    test_guess,
)

__version__ = "0.1.0"

__all__ = [
    "CutResult",
    "EdgeDecision",
    "EdgeRef",
    "Graph",
    "GraphFormatError",
    "InvalidEdgeError",
    "InvalidIndexError",
    "InvalidVertexError",
    "LscgConfig",
    "MaterializeResult",
    "ProbeStats",
    "ProbedView",
    "RandomStream",
    "SUITE_NAMES",
    "SkeletonState",
    "SkeletonTrace",
    "StreamKey",
    "TesterConfig",
    "TesterOutcome",
    "brute_force_strong_connectivities",
    "derive",
    "edge_uniform",
    "enumerate_cut_values",
    "exact_strong_connectivities",
    "graph_is_connected",
    "is_connected",
    "lambda_prime",
    "lambda_value",
    "load_edge_list",
    "materialize_subgraph",
    "min_cut",
    "new_skeleton",
    "query_edge",
    "round_budget",
    "run_suite",
    "scaling_experiment",
    "test_guess",
    "verify_sparsification",
]
