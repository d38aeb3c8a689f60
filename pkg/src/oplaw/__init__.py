"""Numerical verification of operator parallelogram laws, operator Bohr
inequalities and convexity-driven unitarily invariant norm inequalities on
finite complex matrices."""

from .functions import ScalarFn
from .identities import (
    AlphaField,
    IdentityResult,
    QuadratureMeasure,
    WeightVector,
    bohr_gap,
    field_bohr_gap,
    field_parallelogram,
    generalized_parallelogram,
    hilbert_schmidt_identity,
    lemma_parallelogram,
    lemma_polarization,
    two_term_identity,
    vector_identity,
    vector_weighted_identity,
    zhang_fu_identity,
)
from .inequalities import (
    Margin,
    convex_combination_ineq,
    schatten_weighted_ineq,
    superadditivity_ineq,
    theorem_main_margin,
)
from .linalg import (
    ConvergenceError,
    HermitianEigen,
    InvalidInput,
    abs_op,
    apply_scalar_fn,
    hermitian_eig,
    is_psd,
    rank_one,
    real_part,
)
from .norms import NormSpec, norm, norm_family, singular_values, trace_identity_check

__version__ = "0.1.0"
