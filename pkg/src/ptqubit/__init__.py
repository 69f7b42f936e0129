"""Gain-loss (PT-symmetric) qubit simulation toolkit.

Exact propagation across the unbroken, exceptional-point, and broken
regimes; unitary dilation with post-selection; temporal-correlation
functionals (K3, quantum witness); finite-shot emulation; and interval
optimization.
"""

__version__ = "0.1.0"

from .correlations import (
    DEFAULT_SCENARIO,
    CorrelatorSet,
    MeasurementScenario,
    WitnessResult,
    conditional_prob,
    correlators,
    k3_curve,
    quantum_witness,
    witness_initial_state,
)
from .dilation import (
    DilatedState,
    DilationUnitary,
    dilation_report,
    dilation_unitary,
    embed_initial,
    metric_operator,
    postselect,
    pt_via_dilation,
)
from .errors import (
    DegenerateSpectrumError,
    NormalizationError,
    NoStatisticsError,
    ParameterError,
    PtQubitError,
    RegimeError,
    VanishingNormError,
)
from .montecarlo import ShotConfig, ShotRecord, k3_sampled, sample_conditional, witness_sampled
from .optimize import (
    EpDiscontinuity,
    SweepPoint,
    ep_discontinuity,
    max_k3_over_T,
    sweep_gamma,
)
from .pt_dynamics import (
    EP_THRESHOLD,
    PtParams,
    Regime,
    Trajectory,
    evolve_density_nonlinear,
    evolve_state,
    evolve_state_scaled,
    hamiltonian,
    propagator,
    propagator_scaled,
    speed_profile,
    trajectory,
)
from .qstate import (
    IDENTITY2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BlochVector,
    DensityMatrix,
    PureState,
    basis_state,
    bloch_from,
    fubini_study_distance,
    is_hermitian,
    is_unitary,
    measure_projectors,
    minus_y,
    plus_y,
    rotation,
)

__all__ = [
    "__version__",
    # states and operators
    "PureState",
    "DensityMatrix",
    "BlochVector",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY2",
    "basis_state",
    "plus_y",
    "minus_y",
    "bloch_from",
    "fubini_study_distance",
    "rotation",
    "measure_projectors",
    "is_hermitian",
    "is_unitary",
    # dynamics
    "PtParams",
    "Regime",
    "EP_THRESHOLD",
    "Trajectory",
    "hamiltonian",
    "propagator",
    "propagator_scaled",
    "evolve_state",
    "evolve_state_scaled",
    "evolve_density_nonlinear",
    "trajectory",
    "speed_profile",
    # dilation
    "DilatedState",
    "DilationUnitary",
    "metric_operator",
    "embed_initial",
    "dilation_unitary",
    "postselect",
    "pt_via_dilation",
    "dilation_report",
    # correlations
    "MeasurementScenario",
    "DEFAULT_SCENARIO",
    "CorrelatorSet",
    "WitnessResult",
    "conditional_prob",
    "correlators",
    "k3_curve",
    "quantum_witness",
    "witness_initial_state",
    # finite shots
    "ShotConfig",
    "ShotRecord",
    "sample_conditional",
    "k3_sampled",
    "witness_sampled",
    # optimization
    "SweepPoint",
    "EpDiscontinuity",
    "max_k3_over_T",
    "sweep_gamma",
    "ep_discontinuity",
    # errors
    "PtQubitError",
    "ParameterError",
    "NormalizationError",
    "DegenerateSpectrumError",
    "RegimeError",
    "VanishingNormError",
    "NoStatisticsError",
]
