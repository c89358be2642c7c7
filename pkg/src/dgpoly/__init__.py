"""Maltsev and majority polymorphisms of finite digraphs.

Decide whether a digraph admits a Maltsev polymorphism by recursively
quotienting along shared-neighbor classes, synthesize verified majority and
Maltsev operation tables by lifting base-case operations back up the
quotient chain, cross-check everything against brute-force oracles, count
the classes at small sizes, and solve homomorphism-extension problems by
pairwise consistency.
"""

from .census import (
    CSV_HEADER,
    LABELED,
    MAX_N,
    UP_TO_ISO,
    CensusRow,
    count_maltsev,
    enumerate_digraphs,
    rows_to_csv,
    smallest_rectangular_non_maltsev,
)
from .csp import (
    MAYBE,
    NO,
    YES,
    CspInstance,
    PairSystem,
    propagate_pair_consistency,
    random_instance,
    solve_csp_consistency,
)
from .decide import (
    BASE_CYCLES,
    BASE_EDGELESS,
    BASE_NULL,
    MaltsevCertificate,
    decide_maltsev,
    is_disjoint_union_of_cycles,
    is_maltsev,
)
from .digraph import (
    Digraph,
    VertexClassification,
    VertexKind,
    classify_vertices,
    digraph_from_dict,
    digraph_to_dict,
    parse_digraph,
    serialize_digraph,
)
from .errors import (
    DigraphParseError,
    InternalInvariantError,
    NotMaltsevError,
    NotRectangularError,
)
from .oracle import find_homomorphism_bruteforce, find_polymorphism_bruteforce
from .structure import (
    MINUS,
    PLUS,
    ClassBijection,
    FactorGraph,
    Partition,
    factor,
    is_rectangular,
    phi,
    phi_isomorphism_violation,
    r_classes,
    rectangularity_witness,
    serialize_factor,
    verify_phi_isomorphism,
)
from .synth import (
    MAJORITY,
    MALTSEV,
    TernaryOp,
    conjugate_via_phi,
    find_identity_violation,
    find_polymorphism_violation,
    lift_majority,
    lift_maltsev,
    majority_base,
    maltsev_base,
    synth_majority,
    synth_maltsev,
    verify_identities,
    verify_polymorphism,
)

__version__ = "0.1.0"

__all__ = [
    "BASE_CYCLES",
    "BASE_EDGELESS",
    "BASE_NULL",
    "CSV_HEADER",
    "CensusRow",
    "ClassBijection",
    "CspInstance",
    "Digraph",
    "DigraphParseError",
    "FactorGraph",
    "InternalInvariantError",
    "LABELED",
    "MAJORITY",
    "MALTSEV",
    "MAX_N",
    "MAYBE",
    "MINUS",
    "MaltsevCertificate",
    "NO",
    "NotMaltsevError",
    "NotRectangularError",
    "PLUS",
    "PairSystem",
    "Partition",
    "TernaryOp",
    "UP_TO_ISO",
    "VertexClassification",
    "VertexKind",
    "YES",
    "classify_vertices",
    "conjugate_via_phi",
    "count_maltsev",
    "decide_maltsev",
    "digraph_from_dict",
    "digraph_to_dict",
    "enumerate_digraphs",
    "factor",
    "find_homomorphism_bruteforce",
    "find_identity_violation",
    "find_polymorphism_bruteforce",
    "find_polymorphism_violation",
    "is_disjoint_union_of_cycles",
    "is_maltsev",
    "is_rectangular",
    "lift_majority",
    "lift_maltsev",
    "majority_base",
    "maltsev_base",
    "parse_digraph",
    "phi",
    "phi_isomorphism_violation",
    "propagate_pair_consistency",
    "r_classes",
    "random_instance",
    "rectangularity_witness",
    "rows_to_csv",
    "serialize_digraph",
    "serialize_factor",
    "smallest_rectangular_non_maltsev",
    "solve_csp_consistency",
    "synth_majority",
    "synth_maltsev",
    "verify_identities",
    "verify_phi_isomorphism",
    "verify_polymorphism",
]
