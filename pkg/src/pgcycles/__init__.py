"""Exact cycle computations on resolution graphs of normal surface singularities."""
from .blowup import (
    BlowupMap,
    GenericOn,
    Intersection,
    OnBranch,
    blow_up,
    blow_up_sequence,
    contract,
    descend,
    is_minimal,
    is_minimal_wrt,
    pullback_along,
    pushforward_along,
)
from .construction import certify_pg_cycle, choose_W, run_construction, seed_C0
from .cycles import (
    SingularityData,
    anti_nef_closure,
    canonical_cycle,
    degree,
    fundamental_cycle,
    is_numerically_gorenstein,
    k_dot,
)
from .elliptic import EllipticGroup, EllipticSingularity, classify_ulrich, restricted_class, torsion_count
from .errors import (
    BlowupError,
    ConstructionError,
    GraphError,
    GraphMismatch,
    InconsistentAnalyticData,
    MissingAnalyticData,
    PgCyclesError,
)
from .graph import Cycle, DualGraph, Vertex, intersect, is_anti_nef, is_negative_definite, perp, support
from .invariants import (
    IdealDescriptor,
    Unknown,
    colength,
    epsilon,
    good_ideal_test,
    ideal_colength,
    is_pg_cycle,
    mu_data,
    multiplicity,
    ulrich_screen,
)

__version__ = "0.1.0"

__all__ = [
    "BlowupError",
    "BlowupMap",
    "ConstructionError",
    "Cycle",
    "DualGraph",
    "EllipticGroup",
    "EllipticSingularity",
    "GenericOn",
    "GraphError",
    "GraphMismatch",
    "IdealDescriptor",
    "InconsistentAnalyticData",
    "Intersection",
    "MissingAnalyticData",
    "OnBranch",
    "PgCyclesError",
    "SingularityData",
    "Unknown",
    "Vertex",
    "anti_nef_closure",
    "blow_up",
    "blow_up_sequence",
    "canonical_cycle",
    "certify_pg_cycle",
    "choose_W",
    "classify_ulrich",
    "colength",
    "contract",
    "degree",
    "descend",
    "epsilon",
    "fundamental_cycle",
    "good_ideal_test",
    "ideal_colength",
    "intersect",
    "is_anti_nef",
    "is_minimal",
    "is_minimal_wrt",
    "is_negative_definite",
    "is_numerically_gorenstein",
    "is_pg_cycle",
    "k_dot",
    "mu_data",
    "multiplicity",
    "perp",
    "pullback_along",
    "pushforward_along",
    "restricted_class",
    "run_construction",
    "seed_C0",
    "support",
    "torsion_count",
    "ulrich_screen",
]
