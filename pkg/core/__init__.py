from .extensions import (
    ExtensionError,
    NotUnitaryError,
    NotUnimodularError,
    DiagonalExtensionError,
    NonDiagonalExtensionError,
    ClassAlphaError,
    InvariantViolationError,
    is_unitary,
    as_unitary,
    decompose_u2,
    reconstruct,
    classify,
    u_to_rho,
    rho_to_u,
    u_to_alpha,
    validate_class_alpha,
    extract_phase,
    alpha_to_u,
    inverse_boundary_matrix,
    correspondence_residuals,
    boundary_condition_for,
    unitary_for,
    island_probabilities,
    apply_bc_alpha,
    apply_bc_rho,
    boundary_form,
    boundary_data_for_alpha,
    boundary_data_for_rho,
)
from .deficiency import (
    DeficiencyError,
    OutsideDomainError,
    SingularBoundaryMatrixError,
    DeficiencyTag,
    DeficiencyFunction,
    eval_deficiency,
    eval_deficiency_derivative,
    boundary_matrices,
    det_a_minus,
    oracle_boundary_matrix,
    domain_sample,
)
from .scattering import (
    ScatteringError,
    InvalidWavenumberError,
    SingularSystemError,
    UndefinedPhaseError,
    k_grid,
    scatter,
    scatter_sweep,
    smatrix,
    transmission_phase,
    relative_phase,
    bound_states,
)
from .verification import SuiteResult, VerificationReport, run_verification

__all__ = [
    "ExtensionError",
    "NotUnitaryError",
    "NotUnimodularError",
    "DiagonalExtensionError",
    "NonDiagonalExtensionError",
    "ClassAlphaError",
    "InvariantViolationError",
    "is_unitary",
    "as_unitary",
    "decompose_u2",
    "reconstruct",
    "classify",
    "u_to_rho",
    "rho_to_u",
    "u_to_alpha",
    "validate_class_alpha",
    "extract_phase",
    "alpha_to_u",
    "inverse_boundary_matrix",
    "correspondence_residuals",
    "boundary_condition_for",
    "unitary_for",
    "island_probabilities",
    "apply_bc_alpha",
    "apply_bc_rho",
    "boundary_form",
    "boundary_data_for_alpha",
    "boundary_data_for_rho",
    "DeficiencyError",
    "OutsideDomainError",
    "SingularBoundaryMatrixError",
    "DeficiencyTag",
    "DeficiencyFunction",
    "eval_deficiency",
    "eval_deficiency_derivative",
    "boundary_matrices",
    "det_a_minus",
    "oracle_boundary_matrix",
    "domain_sample",
    "ScatteringError",
    "InvalidWavenumberError",
    "SingularSystemError",
    "UndefinedPhaseError",
    "k_grid",
    "scatter",
    "scatter_sweep",
    "smatrix",
    "transmission_phase",
    "relative_phase",
    "bound_states",
    "SuiteResult",
    "VerificationReport",
    "run_verification",
]
