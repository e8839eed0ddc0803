"""Differential estimation of a small angle against a reference source.

Both sources are observed on every baseline; subtracting the reference phase
and the exactly-known coarse offset leaves a per-baseline difference that
doubles along the ladder just like a plain phase, so the same folding
iteration applies.  Channel drift common to the two lines of sight cancels in
the difference, which is the point of the scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .detection import NoiseModel, expected_baseline, extract_phase, simulate_baseline
from .ladder import ArrayConfig
from .montecarlo import _resolve_drift
from .reconstruction import (
    circular_distance,
    fold_observations,
    mod_2pi,
    precision_bounds,
)
from .validation import TWO_PI, as_generator, check_finite, check_non_negative, check_phase, check_positive_int


@dataclass(frozen=True)
class ReferenceScenario:
    """Known coarse geometry of a target/reference pair.

    The target sits at ``gamma0_rad + theta_t_rad`` from the reference, with
    ``gamma0_rad`` known exactly and ``theta_t_rad`` the unknown in
    ``[0, theta0_rad]``.  ``theta_r_rad`` is the (near-zero) tilt between the
    baselines and the reference wavefront.
    """

    gamma0_rad: float
    theta_t_rad: float
    theta0_rad: float
    theta_r_rad: float = 0.0

    def __post_init__(self) -> None:
        check_non_negative("gamma0_rad", self.gamma0_rad)
        check_non_negative("theta0_rad", self.theta0_rad)
        check_finite("theta_r_rad", self.theta_r_rad)
        if not 0.0 <= self.theta_t_rad <= self.theta0_rad:
            raise ValueError(
                f"theta_t_rad must lie in [0, theta0_rad={self.theta0_rad!r}], "
                f"got {self.theta_t_rad!r}"
            )


def target_phase_rad(k: int, scenario: ReferenceScenario, config: ArrayConfig) -> float:
    """Unreduced phase of the target on baseline k."""
    lk = config.lk_m(k)
    return (
        TWO_PI
        * lk
        / config.wavelength_m
        * math.sin(scenario.gamma0_rad + scenario.theta_t_rad + scenario.theta_r_rad)
    )


def reference_phase_rad(k: int, scenario: ReferenceScenario, config: ArrayConfig) -> float:
    """Unreduced phase of the reference on baseline k."""
    lk = config.lk_m(k)
    return TWO_PI * lk / config.wavelength_m * math.sin(scenario.theta_r_rad)


def known_offset_rad(k: int, scenario: ReferenceScenario, config: ArrayConfig) -> float:
    """Exactly-known coarse term subtracted from the phase difference."""
    lk = config.lk_m(k)
    return TWO_PI * lk / config.wavelength_m * math.sin(scenario.gamma0_rad)


def delta_k(
    phi_t_rad: float,
    phi_r_rad: float,
    k: int,
    scenario: ReferenceScenario,
    config: ArrayConfig,
) -> float:
    """Differential observable of baseline k (unreduced).

    ``phi_t - phi_r - (2*pi*L_k/lambda)*sin(gamma0)``; every term scales
    linearly with the baseline, so the value doubles rung to rung.  In the
    small-angle regime it equals
    ``(2*pi*L_k/lambda) * cos(gamma0) * sin(theta_t)``.
    """
    phi_t_rad = check_finite("phi_t_rad", phi_t_rad)
    phi_r_rad = check_finite("phi_r_rad", phi_r_rad)
    return phi_t_rad - phi_r_rad - known_offset_rad(k, scenario, config)


def delta_k_small_angle(k: int, scenario: ReferenceScenario, config: ArrayConfig) -> float:
    """Small-angle form of :func:`delta_k`."""
    lk = config.lk_m(k)
    return (
        TWO_PI
        * lk
        / config.wavelength_m
        * math.cos(scenario.gamma0_rad)
        * math.sin(scenario.theta_t_rad)
    )


def reconstruct_delta1(observed_deltas: Sequence[float]) -> float:
    """Fold wrapped differential observations down to the base difference.

    Same iteration as the single-source reconstruction, applied to the
    differenced observations.
    """
    folded, _ = fold_observations(observed_deltas)
    return folded


def theta_t_from_delta1(
    delta1_rad: float, scenario: ReferenceScenario, config: ArrayConfig
) -> float:
    """Invert the base difference to the small target offset.

    Requires the full offset range to stay within one turn on the first
    baseline (``(2*pi*L1/lambda) * cos(gamma0) * sin(theta0) < 2*pi``),
    otherwise the wrapped value is ambiguous.  Values just below 2*pi are
    treated as small negative estimates so noise around zero stays honest.
    """
    delta1_rad = check_phase("delta1_rad", delta1_rad)
    span = (
        TWO_PI
        * config.l1_m
        / config.wavelength_m
        * math.cos(scenario.gamma0_rad)
        * math.sin(scenario.theta0_rad)
    )
    if span >= TWO_PI:
        raise ValueError(
            "offset range is ambiguous on the first baseline: need "
            "(2*pi*L1/lambda)*cos(gamma0)*sin(theta0) < 2*pi"
        )
    signed = delta1_rad if delta1_rad <= math.pi else delta1_rad - TWO_PI
    arg = signed * config.wavelength_m / (TWO_PI * config.l1_m * math.cos(scenario.gamma0_rad))
    arg = min(max(arg, -1.0), 1.0)
    return math.asin(arg)


@dataclass(frozen=True)
class ReferenceOutcome:
    """One differential trial: base difference and recovered offset angle."""

    true_delta1_rad: float
    estimated_delta1_rad: float
    theta_t_true_rad: float
    theta_t_est_rad: float
    success: bool
    target_records: tuple
    reference_records: tuple


def simulate_reference_run(
    scenario: ReferenceScenario,
    config: ArrayConfig,
    noise: NoiseModel,
    m_per_setting: int,
    seed,
    *,
    asymptotic: bool = False,
    common_drift_rad: float | Sequence[float] | None = None,
    drift_correlation: float = 1.0,
) -> ReferenceOutcome:
    """Interleaved target/reference experiment with shared channel drift.

    Each baseline draws one drift pair applied to the target arm; the
    reference arm sees the same pair scaled by ``drift_correlation`` (1 means
    fully common drift, the stated physical premise) plus an independent
    complement.  ``common_drift_rad`` pins a fixed drift applied identically
    to both arms and both settings of each baseline.  Per-photon drift
    granularity carries no arm correlation: the drift is integrated out
    independently on each arm.

    Success means the folded difference lands within ``pi / 2**K`` of the
    true one (circular), which in angle terms is the ladder uncertainty.
    """
    m_per_setting = check_positive_int("m_per_setting", m_per_setting)
    if not 0.0 <= drift_correlation <= 1.0:
        raise ValueError(
            f"drift_correlation must lie in [0, 1], got {drift_correlation!r}"
        )
    rng = as_generator(seed)
    delta_phi, _ = precision_bounds(config)

    target_records = []
    reference_records = []
    observed_deltas = []
    for k in range(1, config.k_count + 1):
        phi_t = mod_2pi(target_phase_rad(k, scenario, config))
        phi_r = mod_2pi(reference_phase_rad(k, scenario, config))
        drift = _resolve_drift(common_drift_rad, k - 1)

        if asymptotic:
            rec_t = expected_baseline(phi_t, noise, drift_rad=drift)
            rec_r = expected_baseline(phi_r, noise, drift_rad=drift)
        else:
            if drift is not None:
                pair_t = pair_r = (drift, drift)
            elif noise.drift_granularity == "photon" or noise.sigma_rad == 0.0:
                pair_t = pair_r = None
            else:
                shared = noise.drift_granularity == "baseline"
                d = rng.normal(0.0, noise.sigma_rad, 1 if shared else 2)
                u = rng.normal(0.0, noise.sigma_rad, 1 if shared else 2)
                d = np.repeat(d, 2) if shared else d
                u = np.repeat(u, 2) if shared else u
                rho = drift_correlation
                r_mix = rho * d + math.sqrt(1.0 - rho * rho) * u
                pair_t = (float(d[0]), float(d[1]))
                pair_r = (float(r_mix[0]), float(r_mix[1]))
            rec_t = simulate_baseline(phi_t, m_per_setting, noise, rng, drift_rad=pair_t)
            rec_r = simulate_baseline(phi_r, m_per_setting, noise, rng, drift_rad=pair_r)

        target_records.append(rec_t)
        reference_records.append(rec_r)
        est_t = extract_phase(rec_t).phase_rad
        est_r = extract_phase(rec_r).phase_rad
        observed_deltas.append(
            mod_2pi(est_t - est_r - known_offset_rad(k, scenario, config))
        )

    exact = delta_k(
        target_phase_rad(1, scenario, config),
        reference_phase_rad(1, scenario, config),
        1,
        scenario,
        config,
    )
    true_delta1 = mod_2pi(exact)
    estimated = reconstruct_delta1(observed_deltas)
    return ReferenceOutcome(
        true_delta1_rad=true_delta1,
        estimated_delta1_rad=estimated,
        theta_t_true_rad=scenario.theta_t_rad,
        theta_t_est_rad=theta_t_from_delta1(estimated, scenario, config),
        success=circular_distance(estimated, true_delta1) <= delta_phi,
        target_records=tuple(target_records),
        reference_records=tuple(reference_records),
    )
