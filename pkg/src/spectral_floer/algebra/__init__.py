from .exterior import (
    CupForm,
    CupFormError,
    basis,
    basis_index,
    contraction_homology,
    contraction_matrix,
    exterior_dims,
    parse_cup,
)
from .graded import (
    GradedUModule,
    GradedVectorSpace,
    poincare_report,
    umod_equal,
    umod_shift,
    umod_sum,
)

__all__ = [
    "CupForm",
    "CupFormError",
    "GradedUModule",
    "GradedVectorSpace",
    "basis",
    "basis_index",
    "contraction_homology",
    "contraction_matrix",
    "exterior_dims",
    "parse_cup",
    "poincare_report",
    "umod_equal",
    "umod_shift",
    "umod_sum",
]
