"""
Twisting systems, Zhang twists and their correspondence with principal maps.
"""

from .correspondence import (
    TwistEquivalence,
    associated_twist_iso,
    principal_to_twisting,
    twist_equivalence_from_iso,
    twisting_to_principal,
)
from .system import (
    TwistingSystem,
    check_inverse_twist_relation,
    degree_family_window,
    identity_system,
    is_normalized,
    restrict_system,
    sigma_power_system,
    system_from_blocks,
    systems_agree,
    verify_twisting_system,
    zhang_twist,
)

# Short names used by the command line.
delta = principal_to_twisting
gamma = twisting_to_principal

__all__ = [
    "TwistingSystem",
    "check_inverse_twist_relation",
    "degree_family_window",
    "identity_system",
    "is_normalized",
    "restrict_system",
    "sigma_power_system",
    "system_from_blocks",
    "systems_agree",
    "verify_twisting_system",
    "zhang_twist",
    "TwistEquivalence",
    "associated_twist_iso",
    "principal_to_twisting",
    "twisting_to_principal",
    "twist_equivalence_from_iso",
    "delta",
    "gamma",
]
