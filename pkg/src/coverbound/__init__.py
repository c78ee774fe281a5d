"""Spectral lower bounds for weighted graphs via unraveled balls.

Builds the tree of non-backtracking walks around each vertex, assigns
stationary Markov chains on the directed edges, evaluates the spectral
lower bounds these induce (general, regular strong/simple/weak forms and the
second-eigenvalue variant), and produces explicit Rayleigh-vector
certificates checkable to floating-point tolerance.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .bounds import (
    BoundValue,
    EdgeFunction,
    alon_boppana_rhs,
    edge_term,
    general_rhs,
    h_eval,
    mu,
    refined_constants,
    simple_rhs,
    strong_rhs,
    tangent_line,
    threshold_degree,
    universal_cover_rhs,
    weak_rhs,
)
from .certify import (
    Certificate,
    build_theorem_vector,
    case1_vector,
    lambda2_certificate,
    theorem_existence_check,
    verify_lemma42,
    verify_ratio_identity,
)
from .cover import InducedSubgraph, UnraveledBall, ball, peel_core, residual, unravel
from .generators import GeneratorSpec, generate
from .graph import DirectedEdgeSet, WeightedGraph, parse_graph
from .markov import (
    ChainSpec,
    closed_form_stationary,
    sample_edge_frequencies,
    stationary_iterative,
    uniform_nb_chain,
    walk_probability,
    weighted_nb_chain,
)
from .oracle import dense_eigs, enumerate_nb_walks, jensen_gap
from .rng import SplitMix64
from .spectra import (
    CsrOperator,
    EigenResult,
    adjacency_operator,
    lambda1,
    lambda2,
    path_lambda1,
    path_top_eigenvector,
    rayleigh,
)

__all__ = [
    "KERNEL_BACKEND",
    "WeightedGraph",
    "DirectedEdgeSet",
    "parse_graph",
    "UnraveledBall",
    "InducedSubgraph",
    "unravel",
    "ball",
    "residual",
    "peel_core",
    "ChainSpec",
    "uniform_nb_chain",
    "weighted_nb_chain",
    "closed_form_stationary",
    "stationary_iterative",
    "walk_probability",
    "sample_edge_frequencies",
    "CsrOperator",
    "EigenResult",
    "adjacency_operator",
    "path_lambda1",
    "path_top_eigenvector",
    "lambda1",
    "lambda2",
    "rayleigh",
    "EdgeFunction",
    "BoundValue",
    "general_rhs",
    "strong_rhs",
    "simple_rhs",
    "weak_rhs",
    "mu",
    "edge_term",
    "threshold_degree",
    "refined_constants",
    "tangent_line",
    "h_eval",
    "alon_boppana_rhs",
    "universal_cover_rhs",
    "Certificate",
    "build_theorem_vector",
    "theorem_existence_check",
    "case1_vector",
    "verify_lemma42",
    "lambda2_certificate",
    "verify_ratio_identity",
    "dense_eigs",
    "enumerate_nb_walks",
    "jensen_gap",
    "GeneratorSpec",
    "generate",
    "SplitMix64",
]
