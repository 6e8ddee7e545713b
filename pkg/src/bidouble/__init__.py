"""Bidouble covers of the quadric.

Exact invariants, homeomorphism signatures and non-deformation certificates for
bidouble covers of P1 x P1, a signature-grouping search over cover types, and
recognition of class T cyclic quotient singularities.
"""

from bidouble.covers import CoverType, canonicalize, parse_cover_type, validate_type
from bidouble.deformations import manetti_check, natural_deformation_profile, pair_verdict
from bidouble.graph import graph, run_search
from bidouble.invariants import homeo_signature, invariant_record
from bidouble.search import SearchConfig, enumerate_types
from bidouble.singularities import recognize_class_T, smoothing_family

__all__ = [
    "CoverType",
    "SearchConfig",
    "canonicalize",
    "enumerate_types",
    "graph",
    "homeo_signature",
    "invariant_record",
    "manetti_check",
    "natural_deformation_profile",
    "pair_verdict",
    "parse_cover_type",
    "recognize_class_T",
    "run_search",
    "smoothing_family",
    "validate_type",
]
