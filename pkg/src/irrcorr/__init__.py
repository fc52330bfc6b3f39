"""Irreducible multiparty correlations in full-rank multi-qubit states."""

from .channels import (
    KrausChannel,
    apply_kraus,
    apply_unitary,
    attach_ancilla,
    cnot_unitary,
    run_counterexample,
)
from .classical import classical_connected_info, ipf_project
from .coords import (
    EtaCoords,
    ExponentialFamily,
    ThetaCoords,
    density_to_eta,
    density_to_theta,
    eta_to_density,
    in_family,
    legendre_residual,
    mixed_identity_check,
    phi,
    psi,
    random_state,
    random_theta,
    theta_to_density,
)
from .correlations import (
    CorrelationReport,
    decompose,
    decompose_divergence,
    decompose_entropic,
    total_correlation,
    verify_equivalence,
)
from .hermitian import (
    InvalidStateError,
    RankDeficientError,
    as_density,
    matrix_exp,
    matrix_log,
    partial_trace,
    relative_entropy,
    von_neumann_entropy,
)
from .maxent import (
    ConvergenceError,
    InfeasibleError,
    SolverOptions,
    extract_constraints,
    minimize_divergence,
    project,
    pythagorean_check,
)
from .pauli import enumerate_indices, n_zero, pauli_operator

__version__ = "0.1.0"
