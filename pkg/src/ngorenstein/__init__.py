"""Numerically Gorenstein dual graphs of surface singularities.

Exact computation of the anti-canonical cycle of a decorated resolution graph
and enumeration of the self-intersection weights that make it integral.
"""
from .classify import Classification, ZeroCase, ZeroVertexCase, classify, dynkin_shape, zero_n_analysis
from .cycle import (
    CycleReport,
    NotNegativeDefiniteError,
    adjunction_residual,
    anticanonical_cycle,
    arithmetic_genus,
    is_n_gorenstein,
)
from .enumeration import (
    DuValSolution,
    EnumerationConfig,
    EnumerationResult,
    Solution,
    SolutionFamily,
    candidate_n_vectors,
    enumerate_weights,
    minimal_free_weights,
    solutions_for_n,
    stability_check,
)
from .graph import DecoratedGraph, DerivedWeights, GraphError, derived_weights, parse_graph, serialize, validate
from .linalg import intersection_matrix, is_negative_definite, leading_minors, solve_exact
from .oracle import brute_force_oracle, naive_negative_definite

__all__ = [
    "Classification", "ZeroCase", "ZeroVertexCase", "classify", "dynkin_shape", "zero_n_analysis",
    "CycleReport", "NotNegativeDefiniteError", "adjunction_residual", "anticanonical_cycle",
    "arithmetic_genus", "is_n_gorenstein",
    "DuValSolution", "EnumerationConfig", "EnumerationResult", "Solution", "SolutionFamily",
    "candidate_n_vectors", "enumerate_weights", "minimal_free_weights", "solutions_for_n",
    "stability_check",
    "DecoratedGraph", "DerivedWeights", "GraphError", "derived_weights", "parse_graph", "serialize",
    "validate",
    "intersection_matrix", "is_negative_definite", "leading_minors", "solve_exact",
    "brute_force_oracle", "naive_negative_definite",
]
__version__ = "0.1.0"
