"""Exact classification of Sol lattices into their 17 Bravais types."""

from .classify import (
    TYPES,
    BravaisType,
    Classification,
    analyse,
    bravais_type,
    classify,
    realizable_types,
    realize_type,
)
from .equivalence import (
    UnimodularMatrix,
    candidate_parameters,
    class_representatives,
    conjugate_matrix,
    equivalence_search,
)
from .lattice import (
    LatticeMatrix,
    SolLattice,
    canonical_basis,
    isotropy_check,
    verify_presentation,
)
from .quadfield import FieldContext, QuadNum
from .solgroup import PointIsometry, SolTranslation, commutator, compose, invert, power
from .symmetry import PointGroup, point_group

__version__ = "0.1.0"

__all__ = [
    "TYPES", "BravaisType", "Classification", "analyse", "bravais_type", "classify",
    "realizable_types", "realize_type", "UnimodularMatrix", "candidate_parameters",
    "class_representatives", "conjugate_matrix", "equivalence_search", "LatticeMatrix",
    "SolLattice", "canonical_basis", "isotropy_check", "verify_presentation", "FieldContext",
    "QuadNum", "PointIsometry", "SolTranslation", "commutator", "compose", "invert", "power",
    "PointGroup", "point_group",
]
