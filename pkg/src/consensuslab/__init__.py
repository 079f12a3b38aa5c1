"""Consensus-dynamics laboratory.

Three linear averaging models on weighted networks (DeGroot, accelerated
averaging, and memory of local averages), their closed-form spectral rate
analysis, and a seeded simulation harness for envelope and rate
experiments.
"""

from .analysis import (
    BetaStar,
    ConvergenceVerdict,
    GammaStar,
    MappedPair,
    check_mla_convergence,
    consensus_value,
    improving_gamma_exists,
    lambda_hat_max,
    map_eigenvalue,
    map_eigenvalue_accelerated,
    optimal_beta,
    optimal_gamma,
    rho_ess_accelerated,
    rho_ess_mla,
    roots_in_unit_disk_via_halfplane,
)
from .dynamics import (
    AugmentedMatrix,
    AugmentedState,
    ModelKind,
    ModelParams,
    build_augmented,
    step_accelerated,
    step_degroot,
    step_mla,
    step_model,
)
from .errors import (
    AssumptionViolated,
    BadParameter,
    BadSpectrum,
    ConsensusLabError,
    DegenerateSpectrum,
    DimensionMismatch,
    DominantNotSimple,
    InsufficientData,
    NegativeWeight,
    NoConvergence,
    NormalizationFailed,
    NotConvergent,
    NotSquare,
    NotSymmetric,
    ParseError,
    RowSumViolation,
)
from .net import (
    StructureReport,
    WeightedAdjacency,
    analyze_structure,
    make_ring,
    read_matrix,
    validate,
    write_matrix,
)
from .sim import (
    RateFit,
    SimConfig,
    TraceSummary,
    fit_rate,
    random_symmetric_stochastic,
    run_batch,
    simulate_trajectory,
)
from .spectral import (
    Spectrum,
    augmented_eigenvector,
    eigendecompose_symmetric,
    rho_ess,
    verify_augmented_eigenpair,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionViolated",
    "AugmentedMatrix",
    "AugmentedState",
    "BadParameter",
    "BadSpectrum",
    "BetaStar",
    "ConsensusLabError",
    "ConvergenceVerdict",
    "DegenerateSpectrum",
    "DimensionMismatch",
    "DominantNotSimple",
    "GammaStar",
    "InsufficientData",
    "MappedPair",
    "ModelKind",
    "ModelParams",
    "NegativeWeight",
    "NoConvergence",
    "NormalizationFailed",
    "NotConvergent",
    "NotSquare",
    "NotSymmetric",
    "ParseError",
    "RateFit",
    "RowSumViolation",
    "SimConfig",
    "Spectrum",
    "StructureReport",
    "TraceSummary",
    "WeightedAdjacency",
    "analyze_structure",
    "augmented_eigenvector",
    "build_augmented",
    "check_mla_convergence",
    "consensus_value",
    "eigendecompose_symmetric",
    "fit_rate",
    "improving_gamma_exists",
    "lambda_hat_max",
    "make_ring",
    "map_eigenvalue",
    "map_eigenvalue_accelerated",
    "optimal_beta",
    "optimal_gamma",
    "random_symmetric_stochastic",
    "read_matrix",
    "rho_ess",
    "rho_ess_accelerated",
    "rho_ess_mla",
    "roots_in_unit_disk_via_halfplane",
    "run_batch",
    "simulate_trajectory",
    "step_accelerated",
    "step_degroot",
    "step_mla",
    "step_model",
    "validate",
    "verify_augmented_eigenpair",
    "write_matrix",
]
