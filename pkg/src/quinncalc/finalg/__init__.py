"""Finite groupoids, crossed modules and truncated crossed complexes."""

from .groups import (
    FinGroup,
    ValidationReport,
    cyclic_group,
    find_group_iso,
    quotient_group,
    subgroup,
    symmetric_group,
    trivial_group,
)
from .groupoids import (
    FinGroupoid,
    action_groupoid,
    discrete_groupoid,
    find_groupoid_iso,
    groupoid_from_group,
    pair_groupoid,
    quotient_groupoid,
)
from .crossed import (
    CrossedComplex,
    CrossedModulePresentation,
    chi_pi,
    crossed_module_identity,
    crossed_module_zero,
    fundamental_groupoid,
    homotopy_group,
    iota1,
    iota2,
    pi0,
    semidirect,
    validate_crossed_complex,
)

__all__ = [
    "FinGroup",
    "FinGroupoid",
    "ValidationReport",
    "CrossedComplex",
    "CrossedModulePresentation",
    "action_groupoid",
    "chi_pi",
    "crossed_module_identity",
    "crossed_module_zero",
    "cyclic_group",
    "discrete_groupoid",
    "find_group_iso",
    "find_groupoid_iso",
    "fundamental_groupoid",
    "groupoid_from_group",
    "homotopy_group",
    "iota1",
    "iota2",
    "pair_groupoid",
    "pi0",
    "quotient_group",
    "quotient_groupoid",
    "semidirect",
    "subgroup",
    "symmetric_group",
    "trivial_group",
    "validate_crossed_complex",
]
