"""
Bigraded modules over a base algebra and their endomorphism G-algebras.
"""

from .endomorphism import (
    GeneratorReport,
    InvertiblesReport,
    endo_g_algebra,
    generator_heuristic,
    invertible_homogeneous_elements,
)
from .modules import (
    BigradedModule,
    HomShift,
    Summand,
    alternating_shift_rows,
    cell_degrees,
    free_module,
    hom_shift_component,
    module_shifts,
    opposite_shift_rows,
    required_degree_window,
)

# The eg2 fixture's check that every invertible homogeneous element sits in degree 0.
eg2_semisimple_quotient_witness = invertible_homogeneous_elements

__all__ = [
    "BigradedModule",
    "HomShift",
    "Summand",
    "alternating_shift_rows",
    "cell_degrees",
    "free_module",
    "hom_shift_component",
    "module_shifts",
    "opposite_shift_rows",
    "required_degree_window",
    "GeneratorReport",
    "InvertiblesReport",
    "endo_g_algebra",
    "generator_heuristic",
    "invertible_homogeneous_elements",
    "eg2_semisimple_quotient_witness",
]
