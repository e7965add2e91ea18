"""Jet schemes of quasi-ordinary surface singularities.

Given the characteristic exponents of a quasi-ordinary surface, compute the
irreducible components of its jet schemes through the singular locus, the
leveled graphs they form, and the log canonical threshold, and check the
predictions against the jet equations numerically.
"""

from .components import Component, Kind, classify, component, component_set, contains, profile
from .errors import (
    EmptyComponent, GraphTooShallow, InLattice, Inconclusive, InvalidSurface,
    LexOrderViolated, NonRational, NotIncreasing, NotNormalized, QojetsError,
    ReductionFailed, SchemaError, SolveFailed, VariantMismatch,
)
from .graph import LeveledGraph, Variant, build_graph, graphs_equal, new_vertex_events, recover_invariants
from .lct import LctResult, lct_both, lct_closed_form, lct_mustata
from .oracle import jet_expand, predicted_generators, sample_point, verify_component
from .surface import (
    CharacteristicData, canonical_tower, describe, gamma_from_lambda, lambda_from_gamma,
    parse_surface, surface_from_gamma, surface_from_lambda,
)

__version__ = "0.1.0"

__all__ = [
    "CharacteristicData", "Component", "EmptyComponent", "GraphTooShallow",
    "InLattice", "Inconclusive", "InvalidSurface", "Kind", "LctResult",
    "LeveledGraph", "LexOrderViolated", "NonRational", "NotIncreasing",
    "NotNormalized", "QojetsError", "ReductionFailed", "SchemaError",
    "SolveFailed", "Variant", "VariantMismatch", "build_graph",
    "canonical_tower", "classify", "component", "component_set", "contains",
    "describe", "gamma_from_lambda", "graphs_equal", "jet_expand",
    "lambda_from_gamma", "lct_both", "lct_closed_form", "lct_mustata",
    "new_vertex_events", "parse_surface", "predicted_generators", "profile",
    "recover_invariants", "sample_point", "surface_from_gamma",
    "surface_from_lambda", "verify_component",
]
