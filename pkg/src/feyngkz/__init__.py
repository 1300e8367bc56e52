"""Symanzik supports, 2-forest matroids and saturation of Feynman GKZ semigroups."""

from .errors import (
    DegeneracyError,
    FeynGKZError,
    GraphStructureError,
    HypothesisError,
    MatroidError,
    S1IError,
)
from .graph import (
    Edge,
    FeynmanGraph,
    Forest,
    banana,
    cycle,
    enumerate_forests,
    massive_path_exists,
    spanning_tree_count_oracle,
    validate_s1i,
)
from .symanzik import Degeneracy, GmSupport, classify_2forest, gm_support
from .matroids import (
    Matroid,
    check_exchange_axiom,
    feynman_matroid,
    graphic_matroid,
    is_quotient,
    massive_truncation_matroid,
    momentous_matroid,
    quotient_by_subset,
)
from .semigroup import (
    SaturationReport,
    SupportMatrix,
    build_support_matrix,
    check_theorem_conditions,
    degree_one_completeness,
    saturation_check,
)

__version__ = "0.1.0"
