"""Exact computations with coderivations of Z2-graded symmetric coalgebras.

Brackets and codifferentials live in :mod:`liext.cochain`, extensions and
their equivalences in :mod:`liext.extension`, cohomology in
:mod:`liext.cohomology` and the classification theorems in
:mod:`liext.deformation`.
"""

from .cochain import Cochain, bracket, circle, coboundary, cochain, is_codifferential, jacobi_check, phi, psi
from .cohomology import (
    CohomologySpace,
    NeedsInstantiation,
    Slice,
    cohomology_of,
    double_cohomology,
    hom_m,
    hom_w,
    restricted_cohomology,
    triple_cohomology,
)
from .deformation import (
    classify_deformations,
    classify_extension_moduli,
    classify_infinitesimal_extensions,
    classify_rep_deformations_scenario1,
    classify_rep_deformations_scenario2,
    construct_zeta,
)
from .extension import (
    DiagonalAutomorphism,
    ExtensionData,
    apply_beta,
    beta_matrix,
    conjugate,
    push_forward,
    split,
    torus_moduli,
    verify_extension,
)
from .gspace import GradedSpace, InputError
from .problem import ProblemFile, load_problem
from .scalar import Poly, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "Cochain", "bracket", "circle", "coboundary", "cochain", "is_codifferential", "jacobi_check", "phi", "psi",
    "CohomologySpace", "NeedsInstantiation", "Slice", "cohomology_of", "double_cohomology", "hom_m", "hom_w",
    "restricted_cohomology", "triple_cohomology",
    "classify_deformations", "classify_extension_moduli", "classify_infinitesimal_extensions",
    "classify_rep_deformations_scenario1", "classify_rep_deformations_scenario2", "construct_zeta",
    "DiagonalAutomorphism", "ExtensionData", "apply_beta", "beta_matrix", "conjugate", "push_forward", "split",
    "torus_moduli", "verify_extension",
    "GradedSpace", "InputError", "ProblemFile", "load_problem", "Poly", "parse_scalar",
]
