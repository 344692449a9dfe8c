"""Bound states of the deformed exponential (Hua) molecular potential.

Closed-form spectrum from the superpotential ladder, a validity gate on the
centrifugal replacement, and an independent finite-difference eigensolver for
cross-checking every analytic step.
"""

from .errors import (
    AdmissibilityError,
    ConfigError,
    ConvergenceError,
    HuaDomainError,
    HuaError,
    LadderDegenerateError,
    MarginalLevelWarning,
    NoRealSolutionError,
    SingularityError,
    UnboundLevelError,
    ValidityError,
    ValidityWarning,
)
from .model import (
    EffectiveCoefficients,
    HuaParameters,
    PekerisCoefficients,
    QuantumNumbers,
    ValidityReport,
    centrifugal_factor,
    effective_coefficients,
    effective_potential,
    pekeris_coefficients,
    potential_value,
    s_factor,
    singularity_radius,
    u_factor,
    validate_parameters,
)
from .susy import (
    SpectrumLevel,
    SusyState,
    count_bound_states,
    delta_lambda,
    energy_level,
    ground_state_wavefunction,
    ground_state_window,
    partner_potentials,
    riccati_residual,
    shape_invariance_remainder,
    shifted_eigenvalue,
    superpotential_derivative,
    superpotential_params,
    superpotential_value,
    verification_grid,
)
from .eigensolver import (
    DiscreteHamiltonian,
    GridConfig,
    GridSpec,
    SpectrumResult,
    assemble,
    build_grid,
    continuum_threshold,
    count_nodes,
    eigenvalues_below,
    eigenvector,
    pole_exponent,
    radial_operator_potential,
    solve_bound_states,
)

__version__ = "0.1.0"
