"""Exact cup-length obstructions and certified interval bounds for the
synchronization complexity of map pairs into a common target."""

from .algebra import (
    AlgebraElement,
    GradedAlgebra,
    embed_left,
    embed_right,
    exterior_algebra,
    tensor_product,
    trivial_algebra,
    truncated_polynomial,
    wedge_circles_algebra,
)
from .cuplength import LcpResult, coefficient_of, lcp_bruteforce, lcp_subspace_iteration
from .engine import bound_from_cohomology, check_consistency, explain, propagate
from .errors import ContradictionDetected, GraphValidationError, IterationLimitExceeded
from .fields import CoefficientField
from .graph import MapNode, PairNode, ProblemGraph, SpaceNode
from .homs import GradedHom, bar_generators, make_hom, tensor_hom, zero_divisor_generators
from .intervals import ExtNat, INF, Interval
from .runner import RunOptions, run

__all__ = [
    "AlgebraElement",
    "CoefficientField",
    "ContradictionDetected",
    "ExtNat",
    "GradedAlgebra",
    "GradedHom",
    "GraphValidationError",
    "INF",
    "Interval",
    "IterationLimitExceeded",
    "LcpResult",
    "MapNode",
    "PairNode",
    "ProblemGraph",
    "RunOptions",
    "SpaceNode",
    "bar_generators",
    "bound_from_cohomology",
    "check_consistency",
    "coefficient_of",
    "embed_left",
    "embed_right",
    "explain",
    "exterior_algebra",
    "lcp_bruteforce",
    "lcp_subspace_iteration",
    "make_hom",
    "propagate",
    "run",
    "tensor_hom",
    "tensor_product",
    "trivial_algebra",
    "truncated_polynomial",
    "wedge_circles_algebra",
    "zero_divisor_generators",
]
