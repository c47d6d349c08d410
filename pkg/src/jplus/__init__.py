"""Explicit models for plus constructions with Z[J^-1] coefficients.

Presented groups are studied through their 2-complexes and ``Z[J^-1]``
homology; finite groups through their J-perfect radicals.
"""

from .coeffs import AbelianInvariants, JSet, is_j_number, is_trivial_after_localization, j_part, localize
from .fingroup import (
    FiniteGroup,
    Subgroup,
    abelianization,
    brute_force_radical,
    commutator_subgroup,
    from_permutations,
    gamma_radical,
    j_derived_step,
    nullification,
    quotient,
)
from .gamma import (
    SchemaNode,
    WitnessGraph,
    WitnessNode,
    check_witness,
    schema_homology,
    schema_presentation,
    universal_truncation,
    witnessed_subgroup,
)
from .linalg import IntMatrix, cokernel, gcd_minors, kernel_rank, smith_normal_form
from .presentations import (
    Certificate,
    Presentation,
    check_certificate,
    free_product,
    homology,
    is_r_perfect_presentation,
    presentation_complex,
)
from .words import Word, commutator, conjugate, exponent_sum, invert, parse_word, reduce

__version__ = "0.1.0"
