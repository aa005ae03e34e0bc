"""Bipartite qudit states with maximally mixed marginals.

The package builds d*d x d*d density matrices from d x d complex parameter
matrices whose Fourier structure guarantees that both reduced states equal
I/d, block-diagonalises them (and their partial transposes) with shear
permutations, and computes three local-unitary-invariant multisets:

* ``kappa1`` -- the nonzero spectrum (d row weights),
* ``kappa2`` -- the partial-transpose spectrum (d^2 values),
* ``kappa3`` -- the singular values of the correlation matrix in a
  traceless clock/shift operator basis (d^2 - 1 values).

Every blockwise shortcut has a brute-force oracle next to it so the two
routes can be cross-checked numerically.
"""

from .alphas import (
    DEFAULT_TOL,
    NAMED_EXAMPLES,
    AlphaMatrix,
    ConstraintReport,
    ConstraintViolation,
    alpha_from_json,
    canonical_angles,
    constraint_report,
    named_example,
    parse_alpha_json,
    qutrit_family,
    validate,
)
from .invariants import (
    MODE_HS,
    MODE_RAW,
    Discrimination,
    InvariantSet,
    ProbeReport,
    block_invariants,
    canonical_mode,
    correlation_blocks,
    correlation_matrix,
    correlation_singular_values,
    invariant_deviations,
    lu_discriminate,
    lu_probe,
    negativity,
    oracle_invariants,
    pt_blocks,
    pt_spectrum,
    purity,
    state_spectrum,
    traceless_basis,
)
from .linalg import (
    eig_hermitian,
    hermiticity_defect,
    multiset_distance,
    multisets_close,
    partial_trace,
    partial_transpose,
    random_special_unitary,
    singular_values,
)
from .qutrit import (
    ClosedFormValue,
    compare_correlation_closed,
    family_correlation_closed,
    family_negativity_closed,
    family_pt_spectrum_closed,
    negativity_grid,
    write_negativity_csv,
)
from .states import (
    BipartiteState,
    StateReport,
    build_state,
    certify,
    fourier_coeffs,
    shear_unitary,
    state_to_json_dict,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaMatrix",
    "BipartiteState",
    "ClosedFormValue",
    "ConstraintReport",
    "ConstraintViolation",
    "DEFAULT_TOL",
    "Discrimination",
    "InvariantSet",
    "MODE_HS",
    "MODE_RAW",
    "NAMED_EXAMPLES",
    "ProbeReport",
    "StateReport",
    "alpha_from_json",
    "block_invariants",
    "build_state",
    "canonical_angles",
    "canonical_mode",
    "certify",
    "compare_correlation_closed",
    "constraint_report",
    "correlation_blocks",
    "correlation_matrix",
    "correlation_singular_values",
    "eig_hermitian",
    "family_correlation_closed",
    "family_negativity_closed",
    "family_pt_spectrum_closed",
    "fourier_coeffs",
    "hermiticity_defect",
    "invariant_deviations",
    "lu_discriminate",
    "lu_probe",
    "multiset_distance",
    "multisets_close",
    "named_example",
    "negativity",
    "negativity_grid",
    "oracle_invariants",
    "parse_alpha_json",
    "partial_trace",
    "partial_transpose",
    "pt_blocks",
    "pt_spectrum",
    "purity",
    "qutrit_family",
    "random_special_unitary",
    "shear_unitary",
    "singular_values",
    "state_spectrum",
    "state_to_json_dict",
    "traceless_basis",
    "validate",
    "write_negativity_csv",
]
