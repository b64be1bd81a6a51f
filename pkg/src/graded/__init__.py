"""
Graded algebras by structure constants, graded maps and example builders.
"""

from .algebra import (
    GradedAlgebra,
    HomogeneousElement,
    multiply,
    restrict,
    same_structure,
    structure_differences,
    validate_algebra,
)
from .builders import (
    build_direct_sum,
    build_from_products,
    build_group_algebra,
    build_laurent_ring,
    build_matrix_example,
    build_polynomial_ring,
    monomial_label,
    parse_monomial,
    scaling_automorphism,
)
from .maps import (
    GradedLinearMap,
    apply_graded_map,
    check_algebra_automorphism,
    check_algebra_iso,
    compose_maps,
    diagonal_map,
    identity_map,
    invert_map,
    map_power,
    maps_equal,
)

__all__ = [
    # Algebras
    "GradedAlgebra",
    "HomogeneousElement",
    "multiply",
    "restrict",
    "same_structure",
    "structure_differences",
    "validate_algebra",
    # Builders
    "build_direct_sum",
    "build_from_products",
    "build_group_algebra",
    "build_laurent_ring",
    "build_matrix_example",
    "build_polynomial_ring",
    "monomial_label",
    "parse_monomial",
    "scaling_automorphism",
    # Maps
    "GradedLinearMap",
    "apply_graded_map",
    "check_algebra_automorphism",
    "check_algebra_iso",
    "compose_maps",
    "diagonal_map",
    "identity_map",
    "invert_map",
    "map_power",
    "maps_equal",
]
