"""Exact certificates for unextendible biseparable bases and genuinely entangled subspaces."""

from .constructions import (
    RotationTriple,
    all_rotations,
    build_family,
    family_222,
    family_333,
    ket,
    omega_222,
    omega_set,
    stopper,
)
from .distillability import certify_one_distillable, fact3_enumeration, lemma4_check
from .entanglement import (
    certify_ges,
    certify_ubb,
    orthogonal_complement,
    product_forming_matrices,
    span_dimension,
    symmetrization_matrices,
)
from .exactla import ExactMatrix, ExactScalar, kernel_basis, rank
from .locc import ProtocolNode, Outcome, apply_node, leaf_distinguishable, verify_tree
from .nonlocality import (
    certify_strong_nonlocality,
    construct_nontrivial_oplm,
    oplm_solution_space,
    reduced_feature_matrices,
)
from .states import (
    Grouping,
    PartySystem,
    PureState,
    StateSet,
    cyclic_rotate,
    flatten,
    tripartite_groupings,
    unflatten,
)

__version__ = "0.1.0"

__all__ = [
    "ExactMatrix",
    "ExactScalar",
    "Grouping",
    "Outcome",
    "PartySystem",
    "ProtocolNode",
    "PureState",
    "RotationTriple",
    "StateSet",
    "all_rotations",
    "apply_node",
    "build_family",
    "certify_ges",
    "certify_one_distillable",
    "certify_strong_nonlocality",
    "certify_ubb",
    "construct_nontrivial_oplm",
    "cyclic_rotate",
    "fact3_enumeration",
    "family_222",
    "family_333",
    "flatten",
    "kernel_basis",
    "ket",
    "leaf_distinguishable",
    "lemma4_check",
    "omega_222",
    "omega_set",
    "oplm_solution_space",
    "orthogonal_complement",
    "product_forming_matrices",
    "rank",
    "reduced_feature_matrices",
    "span_dimension",
    "stopper",
    "symmetrization_matrices",
    "tripartite_groupings",
    "unflatten",
    "verify_tree",
]
