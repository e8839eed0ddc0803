"""Monte Carlo orchestration: full trials, failure rates, photon budgets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .detection import DetectionRecord, NoiseModel, expected_baseline, extract_phase, simulate_baseline
from .ladder import ArrayConfig
from .reconstruction import PhaseVector, circular_distance, reconstruct_phi1
from .validation import (
    as_generator,
    as_seed_sequence,
    check_non_negative,
    check_positive_int,
    check_probability,
)


@dataclass(frozen=True)
class TrialOutcome:
    """One end-to-end estimation trial.

    Success means the estimate lies within the folding uncertainty
    ``pi / 2**K`` of the true base phase, measured along the circle so a
    truth near 0 matched by an estimate near 2*pi still counts.
    """

    true_phi1_rad: float
    estimated_phi1_rad: float
    success: bool
    records: tuple[DetectionRecord, ...]


@dataclass(frozen=True)
class SweepRow:
    m_per_setting: int
    photon_budget: float
    eps_mean: float
    eps_stderr: float
    trials: int
    seed: int

    def __post_init__(self) -> None:
        check_probability("eps_mean", self.eps_mean)


@dataclass(frozen=True)
class SweepResult:
    """Failure probability versus sample budget, with full provenance."""

    rows: tuple[SweepRow, ...]
    config: ArrayConfig
    noise: NoiseModel
    master_seed: int
    trials: int


def _resolve_drift(fixed_drift_rad, k_index: int):
    if fixed_drift_rad is None:
        return None
    if isinstance(fixed_drift_rad, (int, float)):
        return float(fixed_drift_rad)
    return float(fixed_drift_rad[k_index])


def run_trial(
    theta_rad: float,
    config: ArrayConfig,
    noise: NoiseModel,
    m_per_setting: int,
    seed,
    *,
    asymptotic: bool = False,
    fixed_drift_rad: float | Sequence[float] | None = None,
    circular: bool = True,
) -> TrialOutcome:
    """Simulate all K baselines at a source angle and reconstruct the phase.

    ``asymptotic=True`` replaces sampled counts with expected counts (the
    asymptotic regime of the flipping/drift robustness checks).  ``fixed_drift_rad``
    pins the channel drift (scalar for all baselines or one value per
    baseline), shared between the two settings of each baseline.
    ``circular=False`` classifies success by the plain absolute difference
    instead of circular distance.
    """
    if not 0.0 <= theta_rad < config.theta_bar_rad:
        raise ValueError(
            f"theta_rad must lie in [0, theta_bar={config.theta_bar_rad!r}), "
            f"got {theta_rad!r}"
        )
    rng = as_generator(seed)
    phases = PhaseVector.from_angle(theta_rad, config)
    reduced = phases.reduced_true_phase_rad

    records = []
    for k, phi in enumerate(reduced):
        drift = _resolve_drift(fixed_drift_rad, k)
        if asymptotic:
            records.append(expected_baseline(phi, noise, drift_rad=drift))
        else:
            records.append(
                simulate_baseline(phi, m_per_setting, noise, rng, drift_rad=drift)
            )
    observed = [extract_phase(rec).phase_rad for rec in records]
    result = reconstruct_phi1(observed, config)

    true_phi1 = phases.observed_phase_rad[0]
    if circular:
        deviation = circular_distance(result.phi1_rad, true_phi1)
    else:
        deviation = abs(result.phi1_rad - true_phi1)
    return TrialOutcome(
        true_phi1_rad=true_phi1,
        estimated_phi1_rad=result.phi1_rad,
        success=deviation <= result.delta_phi_bound_rad,
        records=tuple(records),
    )


def average_failure(
    config: ArrayConfig,
    noise: NoiseModel,
    m_per_setting: int,
    trials: int,
    seed,
    *,
    asymptotic: bool = False,
    theta_mode: str = "uniform",
) -> float:
    """Failure fraction over trials with the base phase uniform on the circle.

    Each trial consumes its own child stream spawned from the seed, so the
    result is reproducible and trials never share a stream.  ``theta_mode``
    "grid" replaces the uniform draw by a deterministic midpoint grid over
    the angular prior, for regression tests.
    """
    trials = check_positive_int("trials", trials)
    if theta_mode not in ("uniform", "grid"):
        raise ValueError(f"theta_mode must be 'uniform' or 'grid', got {theta_mode!r}")
    children = as_seed_sequence(seed).spawn(trials)
    failures = 0
    for t in range(trials):
        rng = np.random.default_rng(children[t])
        if theta_mode == "uniform":
            theta = float(rng.uniform(0.0, config.theta_bar_rad))
        else:
            theta = (t + 0.5) * config.theta_bar_rad / trials
        outcome = run_trial(
            theta, config, noise, m_per_setting, rng, asymptotic=asymptotic
        )
        failures += not outcome.success
    return failures / trials


def attenuation(l_m: float, noise: NoiseModel) -> float:
    """Fibre transmittance over length ``l_m``: ``10**(-alpha*l/l0)``."""
    l_m = check_non_negative("l_m", l_m)
    return 10.0 ** (-noise.alpha * l_m / noise.l0_m)


def photon_budget(m_per_setting: int, config: ArrayConfig, noise: NoiseModel) -> float:
    """Incident photons needed for ``m_per_setting`` detected samples per
    setting on every baseline, with the splitter at mid-fibre:
    ``sum_k 2*M / eta(L_k / 2)``."""
    m_per_setting = check_positive_int("m_per_setting", m_per_setting)
    return sum(
        2.0 * m_per_setting / attenuation(config.lk_m(k) / 2.0, noise)
        for k in range(1, config.k_count + 1)
    )


def sweep(
    config: ArrayConfig,
    noise: NoiseModel,
    m_grid: Sequence[int],
    trials: int,
    seed: int,
    *,
    asymptotic: bool = False,
) -> SweepResult:
    """Average failure probability across a grid of per-setting budgets.

    The grid must be strictly increasing so the photon budget column is too.
    Row i draws its trials from child streams keyed (i, t) off the master
    seed; re-running with identical arguments reproduces every row bit for
    bit.
    """
    if len(m_grid) == 0:
        raise ValueError("m_grid must not be empty")
    grid = [check_positive_int(f"m_grid[{i}]", m) for i, m in enumerate(m_grid)]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("m_grid must be strictly increasing")
    trials = check_positive_int("trials", trials)
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
    master_seed = int(seed)

    rows = []
    for i, m in enumerate(grid):
        row_seed = np.random.SeedSequence(master_seed, spawn_key=(i,))
        eps = average_failure(
            config, noise, m, trials, row_seed, asymptotic=asymptotic
        )
        stderr = math.sqrt(eps * (1.0 - eps) / trials)
        rows.append(
            SweepRow(
                m_per_setting=m,
                photon_budget=photon_budget(m, config, noise),
                eps_mean=eps,
                eps_stderr=stderr,
                trials=trials,
                seed=master_seed,
            )
        )
    return SweepResult(
        rows=tuple(rows),
        config=config,
        noise=noise,
        master_seed=master_seed,
        trials=trials,
    )
