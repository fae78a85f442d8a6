"""Unitary dynamics of time-dependent non-Hermitian su(1,1)/su(2) generators.

The package builds Hermitizing (Dyson-type) maps in Gauss-factorized form,
integrates the hermiticity-constraint flow, evaluates the Hermitian
counterpart and its squeeze-parameter evolution, and provides exact Fock
realizations for metric-induced mode entanglement.
"""

from .errors import (BranchCrossingError, BreakdownError, ConfigError,
                     CoordinateSingularityError, DivergentZError, DomainError,
                     HermitizationError, MapOverflowError, PoleError,
                     PseudohermError, SingularRhsError)
from .lie_core import (AlgebraKind, CoeffVector, Rep2, adjoint_transfer,
                       commutator, rep2_coeffs, rep2_generators, rep2_matrix,
                       unified_trig)
from .numerics import IntegratorConfig
from .dyson_map import (BreakdownReport, CriticalTimes, DysonTrajectory,
                        ExpParams, GaussState, HamiltonianProfile,
                        TimeProfile, ValidityReport, as_profile, chi,
                        critical_times, dyson_ode_rhs, gauss_decompose,
                        integrate_dyson, k0_closed_form, recompose, validity,
                        z_value)
from .hermitian_map import (HermCoeffs, RawCoeffs, counterpart,
                            counterpart_raw, hermiticity_residual)
from .evolution import (SqueezeState, SqueezeTrajectory, integrate_squeeze,
                        k0_closed_form_squeeze, omega_eff, phase_integral,
                        squeeze_ode_rhs)
from .fock import (FockWorkspace, PureState, build_workspace, entropy_closed,
                   eta_matrix, evolution_ops, evolved_state_closed,
                   expectation_consistency, ground_state, linear_entropy,
                   pair_cutoff, partial_trace_mode2,
                   quasi_hermiticity_residual, theta_matrix)

__version__ = "0.1.0"

__all__ = [
    "AlgebraKind", "BranchCrossingError", "BreakdownError", "BreakdownReport",
    "CoeffVector", "ConfigError", "CoordinateSingularityError",
    "CriticalTimes", "DivergentZError", "DomainError", "DysonTrajectory",
    "ExpParams", "FockWorkspace", "GaussState", "HamiltonianProfile",
    "HermCoeffs", "HermitizationError", "IntegratorConfig",
    "MapOverflowError", "PoleError", "PseudohermError", "PureState",
    "RawCoeffs", "Rep2", "SingularRhsError", "SqueezeState",
    "SqueezeTrajectory", "TimeProfile", "ValidityReport", "adjoint_transfer",
    "as_profile", "build_workspace", "chi", "commutator", "counterpart",
    "counterpart_raw", "critical_times", "dyson_ode_rhs", "entropy_closed",
    "eta_matrix", "evolution_ops", "evolved_state_closed",
    "expectation_consistency", "gauss_decompose", "ground_state",
    "hermiticity_residual", "integrate_dyson", "integrate_squeeze",
    "k0_closed_form",
    "k0_closed_form_squeeze", "linear_entropy", "omega_eff", "pair_cutoff",
    "partial_trace_mode2", "phase_integral", "quasi_hermiticity_residual",
    "recompose", "rep2_coeffs", "rep2_generators", "rep2_matrix",
    "squeeze_ode_rhs", "theta_matrix", "unified_trig", "validity", "z_value",
    "__version__",
]
