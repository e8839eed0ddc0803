"""Multi-baseline interferometric angle estimation.

A ladder of baselines with doubling lengths is measured one wrapped phase at
a time; folding the observations bit by bit recovers the source angle with an
uncertainty shrinking as ``2**-K`` while tolerating large per-baseline
observation errors.  The package bundles the folding core, a single-photon
detection simulator, Monte Carlo failure-rate sweeps, the analytic
single-baseline comparison, and a reference-source differential mode.
"""

__version__ = "0.1.0"

from .detection import (
    DetectionRecord,
    NoiseModel,
    PhaseEstimate,
    apply_flipping,
    click_probabilities,
    expected_baseline,
    expected_flipping,
    extract_phase,
    quadrant,
    sample_counts,
    simulate_baseline,
)
from .estimator import ClickRatioPhaseExtractor, LadderAngleEstimator
from .ladder import ArrayConfig
from .montecarlo import (
    SweepResult,
    SweepRow,
    TrialOutcome,
    attenuation,
    average_failure,
    photon_budget,
    run_trial,
    sweep,
)
from .reconstruction import (
    PhaseVector,
    ReconstructionResult,
    check_halving_condition,
    circular_distance,
    fold_observations,
    mod_2pi,
    phi_to_theta,
    precision_bounds,
    reconstruct_phi1,
    residual,
    wrap_error,
)
from .reference import (
    ReferenceOutcome,
    ReferenceScenario,
    delta_k,
    delta_k_small_angle,
    reconstruct_delta1,
    simulate_reference_run,
    theta_t_from_delta1,
)
from .single_baseline import (
    SingleBaselineModel,
    normal_cdf,
    normal_quantile,
    photons_for_failure,
    precision_limit,
    single_baseline_failure,
    single_baseline_sigma_theta,
    single_baseline_theta,
)
from .units import arcsec_to_rad, mas_to_rad, rad_to_arcsec, rad_to_mas

__all__ = [
    "ArrayConfig",
    "ClickRatioPhaseExtractor",
    "DetectionRecord",
    "LadderAngleEstimator",
    "NoiseModel",
    "PhaseEstimate",
    "PhaseVector",
    "ReconstructionResult",
    "ReferenceOutcome",
    "ReferenceScenario",
    "SingleBaselineModel",
    "SweepResult",
    "SweepRow",
    "TrialOutcome",
    "apply_flipping",
    "arcsec_to_rad",
    "attenuation",
    "average_failure",
    "check_halving_condition",
    "circular_distance",
    "click_probabilities",
    "delta_k",
    "delta_k_small_angle",
    "expected_baseline",
    "expected_flipping",
    "extract_phase",
    "fold_observations",
    "mas_to_rad",
    "mod_2pi",
    "normal_cdf",
    "normal_quantile",
    "phi_to_theta",
    "photon_budget",
    "photons_for_failure",
    "precision_bounds",
    "precision_limit",
    "quadrant",
    "rad_to_arcsec",
    "rad_to_mas",
    "reconstruct_delta1",
    "reconstruct_phi1",
    "residual",
    "run_trial",
    "sample_counts",
    "simulate_baseline",
    "simulate_reference_run",
    "single_baseline_failure",
    "single_baseline_sigma_theta",
    "single_baseline_theta",
    "sweep",
    "theta_t_from_delta1",
    "wrap_error",
]
