"""
G-algebras on index windows: associated algebras, principal maps, compression.
"""

from .morphism import (
    GAlgebraMorphism,
    check_g_algebra_iso,
    compose_morphisms,
    identity_blocks_morphism,
    identity_morphism,
    inverse_morphism,
    morphism_from_basis_map,
)
from .principal import (
    ObstructionEntry,
    ObstructionReport,
    PrincipalMap,
    canonical_principal_map,
    check_fundamental_identity,
    compress,
    compression_window,
    conjugate_principal_map,
    default_family_window,
    principal_dimension_obstruction,
    principal_map_from_generator,
    principal_maps_agree,
    verify_principal_map,
)
from .window import (
    GAlgebraWindow,
    Origin,
    Side,
    associated_g_algebra,
    associated_left_g_algebra,
    validate_g_algebra,
)

__all__ = [
    # Windows
    "GAlgebraWindow",
    "Origin",
    "Side",
    "associated_g_algebra",
    "associated_left_g_algebra",
    "validate_g_algebra",
    # Morphisms
    "GAlgebraMorphism",
    "check_g_algebra_iso",
    "compose_morphisms",
    "identity_blocks_morphism",
    "identity_morphism",
    "inverse_morphism",
    "morphism_from_basis_map",
    # Principal maps
    "ObstructionEntry",
    "ObstructionReport",
    "PrincipalMap",
    "canonical_principal_map",
    "check_fundamental_identity",
    "compress",
    "compression_window",
    "conjugate_principal_map",
    "default_family_window",
    "principal_dimension_obstruction",
    "principal_map_from_generator",
    "principal_maps_agree",
    "verify_principal_map",
]
