"""Disjoint cycle packing for uncrossable cycle families in planar graphs."""

from __future__ import annotations

from .approx import approx_pack, baker_pack, face_minimal_cycles
from .errors import (
    BoundViolated,
    ChainViolation,
    CyclePackError,
    GuaranteeViolation,
    InstanceError,
    NonPlanar,
    NotACycle,
    NotLaminar,
)
from .exact import enumerate_cycles, exact_lp, exact_max_packing, exact_min_transversal
from .families import FamilyKind, FamilySpec, make_family, membership, support_oracle, weight_oracle
from .io import Instance, load_instance
from .lp import FractionalPacking, refine_min_length, solve_packing_lp
from .packing import Mode, Packing
from .planar import Cycle, EmbeddedGraph, build_embedding, interior_signature, laminar_forest
from .rounding import efficient_cycle, efficient_cycle_edges, one_sided, round_edge, round_vertex, round_weighted_vertex
from .uncross import laminarize_lp, strong_uncross, uncross_multiset

__version__ = "0.1.0"

__all__ = [
    "BoundViolated",
    "ChainViolation",
    "Cycle",
    "CyclePackError",
    "EmbeddedGraph",
    "FamilyKind",
    "FamilySpec",
    "FractionalPacking",
    "GuaranteeViolation",
    "Instance",
    "InstanceError",
    "Mode",
    "NonPlanar",
    "NotACycle",
    "NotLaminar",
    "Packing",
    "approx_pack",
    "baker_pack",
    "build_embedding",
    "efficient_cycle",
    "efficient_cycle_edges",
    "enumerate_cycles",
    "exact_lp",
    "exact_max_packing",
    "exact_min_transversal",
    "face_minimal_cycles",
    "interior_signature",
    "laminar_forest",
    "laminarize_lp",
    "load_instance",
    "make_family",
    "membership",
    "one_sided",
    "refine_min_length",
    "round_edge",
    "round_vertex",
    "round_weighted_vertex",
    "solve_packing_lp",
    "strong_uncross",
    "support_oracle",
    "uncross_multiset",
    "weight_oracle",
]
