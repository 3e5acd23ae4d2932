"""Exact and certified feedback vertex sets in sparse graphs."""

from .constructive import (
    FvsCertificate,
    ReductionTrace,
    TraceStep,
    fvs_planar_girth5,
    fvs_subcubic,
    verify_certificate,
)
from .errors import DomainError, FvsLabError, IntegrityError, ResourceError
from .exact import FvsResult, is_feedback_vertex_set, min_fvs_bruteforce, min_fvs_exact
from .family import (
    FamilyMember,
    FamilySignature,
    epsilon_of,
    family_fvs,
    family_membership,
    forbidden_family,
    generate_family,
    r_of,
)
from .graph import Graph
from .subdivision import contains_induced_subdivision

__all__ = [
    "DomainError",
    "FamilyMember",
    "FamilySignature",
    "FvsCertificate",
    "FvsLabError",
    "FvsResult",
    "Graph",
    "IntegrityError",
    "ReductionTrace",
    "ResourceError",
    "TraceStep",
    "contains_induced_subdivision",
    "epsilon_of",
    "family_fvs",
    "family_membership",
    "forbidden_family",
    "fvs_planar_girth5",
    "fvs_subcubic",
    "generate_family",
    "is_feedback_vertex_set",
    "min_fvs_bruteforce",
    "min_fvs_exact",
    "r_of",
    "verify_certificate",
]
