"""Single-photon detection statistics for one baseline.

Each baseline is measured with two interferometer settings (zero and quarter
turn phase shift).  Within a setting, events where exactly one detector
clicks are kept; the fraction of clicks on the second detector estimates the
cosine (first setting) or sine (second setting) of the baseline phase.  The
noise model covers Gaussian channel phase drift, detector crosstalk
("flipping"), and fibre attenuation parameters used by the photon budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .reconstruction import mod_2pi
from .validation import (
    as_generator,
    check_finite,
    check_non_negative,
    check_phase,
    check_positive,
    check_positive_int,
    check_probability,
    check_rate,
)

DRIFT_GRANULARITIES = ("dataset", "baseline", "photon")


@dataclass(frozen=True)
class NoiseModel:
    """Channel and detector noise parameters.

    sigma_rad:
        Standard deviation of the Gaussian phase drift.
    flip_a, flip_b:
        Crosstalk rates of the first data set: an a-click is recorded as b
        with probability ``flip_a``, a b-click as a with ``flip_b``.
    flip_a2, flip_b2:
        Same for the second data set.
    alpha, l0_m:
        Fibre attenuation: transmittance ``10**(-alpha * l / l0_m)``.
    drift_granularity:
        How often the drift is redrawn: once per data set ("dataset", the
        default), once per baseline shared by both settings ("baseline"), or
        independently per photon ("photon").  Per-photon drift makes the
        click counts exactly binomial with the contrast-reduced probabilities
        ``(1 -+ exp(-sigma**2/2) * cos/sin)/2``.
    """

    sigma_rad: float = 0.0
    flip_a: float = 0.0
    flip_b: float = 0.0
    flip_a2: float = 0.0
    flip_b2: float = 0.0
    alpha: float = 0.2
    l0_m: float = 10_000.0
    drift_granularity: str = "dataset"

    def __post_init__(self) -> None:
        check_non_negative("sigma_rad", self.sigma_rad)
        for name in ("flip_a", "flip_b", "flip_a2", "flip_b2"):
            check_rate(name, getattr(self, name))
        check_non_negative("alpha", self.alpha)
        check_positive("l0_m", self.l0_m)
        if self.drift_granularity not in DRIFT_GRANULARITIES:
            raise ValueError(
                f"drift_granularity must be one of {DRIFT_GRANULARITIES}, "
                f"got {self.drift_granularity!r}"
            )

    @property
    def drift_contrast(self) -> float:
        """Fringe contrast after averaging Gaussian drift per photon."""
        return math.exp(-0.5 * self.sigma_rad**2)


@dataclass(frozen=True)
class DetectionRecord:
    """Click counts of one baseline: (m, M) for the zero-shift setting and
    (mbar, big_mbar) for the quarter-turn setting.

    Sampled records hold integers; asymptotic-mode records hold expected
    (real-valued) counts flowing through the same extraction path.
    """

    m: float
    big_m: float
    mbar: float
    big_mbar: float

    def __post_init__(self) -> None:
        check_non_negative("m", self.m)
        check_non_negative("mbar", self.mbar)
        if self.m > self.big_m:
            raise ValueError(f"m={self.m!r} exceeds big_m={self.big_m!r}")
        if self.mbar > self.big_mbar:
            raise ValueError(f"mbar={self.mbar!r} exceeds big_mbar={self.big_mbar!r}")


class PhaseEstimate(NamedTuple):
    phase_rad: float
    degenerate: bool


def click_probabilities(phi_rad: float, drift_rad: float) -> tuple[float, float]:
    """Second-detector click probabilities under the two settings.

    ``p = (1 - cos(phi + drift))/2`` and ``pbar = (1 + sin(phi + drift))/2``.
    """
    phi_rad = check_finite("phi_rad", phi_rad)
    drift_rad = check_finite("drift_rad", drift_rad)
    shifted = phi_rad + drift_rad
    p = 0.5 * (1.0 - math.cos(shifted))
    pbar = 0.5 * (1.0 + math.sin(shifted))
    return min(max(p, 0.0), 1.0), min(max(pbar, 0.0), 1.0)


def sample_counts(p: float, trials: int, seed) -> int:
    """Binomial(trials, p) draw, deterministic given the seed."""
    p = check_probability("p", p)
    trials = check_positive_int("trials", trials)
    return int(as_generator(seed).binomial(trials, p))


def apply_flipping(
    counts: tuple[int, int], rates: tuple[float, float], seed
) -> tuple[int, int]:
    """Per-event detector crosstalk.

    Each of the ``n_a`` events moves to the other detector with probability
    ``rates[0]`` and each of the ``n_b`` events with ``rates[1]``.  The total
    count is conserved; the expectation matches the linear mixing
    ``n_a*(1-p_a) + n_b*p_b``.
    """
    n_a, n_b = counts
    if int(n_a) != n_a or int(n_b) != n_b or n_a < 0 or n_b < 0:
        raise ValueError(f"counts must be non-negative integers, got {counts!r}")
    p_a = check_rate("rates[0]", rates[0])
    p_b = check_rate("rates[1]", rates[1])
    rng = as_generator(seed)
    a_to_b = int(rng.binomial(int(n_a), p_a))
    b_to_a = int(rng.binomial(int(n_b), p_b))
    return int(n_a) - a_to_b + b_to_a, int(n_b) - b_to_a + a_to_b


def expected_flipping(
    counts: tuple[float, float], rates: tuple[float, float]
) -> tuple[float, float]:
    """Asymptotic (expected-count) form of :func:`apply_flipping`."""
    n_a, n_b = counts
    p_a = check_rate("rates[0]", rates[0])
    p_b = check_rate("rates[1]", rates[1])
    return n_a * (1.0 - p_a) + n_b * p_b, n_b * (1.0 - p_b) + n_a * p_a


def extract_phase(record: DetectionRecord, *, literal_halfsum: bool = False) -> PhaseEstimate:
    """Recover the baseline phase from the four counts.

    ``q = 1 - 2m/M`` estimates the cosine and ``qbar = 2*mbar/Mbar - 1`` the
    sine; both are clamped to [-1, 1] against finite-sample overshoot.  The
    default recovery takes the two-argument angle of ``(q, qbar)``, which is
    invariant under a common positive rescaling of the pair and resolves all
    four quadrants.  A degenerate ``(0, 0)`` pair carries no direction and
    maps to phase 0 with the flag set.

    ``literal_halfsum=True`` switches to the half-sum of inverse trig values,
    ``((acos q + asin qbar)/2) mod 2*pi``, kept for comparison runs; it agrees
    with the default in the first quadrant only.
    """
    if record.big_m <= 0:
        raise ValueError("big_m must be >= 1 to extract a phase")
    if record.big_mbar <= 0:
        raise ValueError("big_mbar must be >= 1 to extract a phase")
    q = 1.0 - 2.0 * record.m / record.big_m
    qbar = 2.0 * record.mbar / record.big_mbar - 1.0
    q = min(max(q, -1.0), 1.0)
    qbar = min(max(qbar, -1.0), 1.0)
    if literal_halfsum:
        return PhaseEstimate(mod_2pi(0.5 * (math.acos(q) + math.asin(qbar))), False)
    if q == 0.0 and qbar == 0.0:
        return PhaseEstimate(0.0, True)
    return PhaseEstimate(mod_2pi(math.atan2(qbar, q)), False)


def quadrant(phi_rad: float) -> int:
    """Quadrant of a reduced phase: 1..4 for the four quarters of [0, 2*pi).

    Matches the sign-pair classification (sign of -cos, sign of sin) away
    from the boundaries; boundaries belong to the upper quadrant.
    """
    phi_rad = check_phase("phi_rad", phi_rad)
    return min(int(phi_rad // (math.pi / 2.0)), 3) + 1


def _drift_pair(noise: NoiseModel, rng: np.random.Generator) -> tuple[float, float]:
    if noise.sigma_rad == 0.0:
        return 0.0, 0.0
    if noise.drift_granularity == "baseline":
        d = float(rng.normal(0.0, noise.sigma_rad))
        return d, d
    d0, d1 = rng.normal(0.0, noise.sigma_rad, 2)
    return float(d0), float(d1)


def _setting_probabilities(
    phi_rad: float, noise: NoiseModel, drift_rad: tuple[float, float] | None
) -> tuple[float, float]:
    """Per-photon click probabilities of the two settings.

    With explicit drifts the plain shifted probabilities apply; under
    per-photon granularity the Gaussian is integrated out analytically,
    shrinking the fringe contrast instead.
    """
    if drift_rad is not None:
        p, _ = click_probabilities(phi_rad, drift_rad[0])
        _, pbar = click_probabilities(phi_rad, drift_rad[1])
        return p, pbar
    rho = noise.drift_contrast
    p = 0.5 * (1.0 - rho * math.cos(phi_rad))
    pbar = 0.5 * (1.0 + rho * math.sin(phi_rad))
    return min(max(p, 0.0), 1.0), min(max(pbar, 0.0), 1.0)


def simulate_baseline(
    phi_rad: float,
    m_per_setting: int,
    noise: NoiseModel,
    seed,
    *,
    drift_rad: float | tuple[float, float] | None = None,
) -> DetectionRecord:
    """Simulate both settings of one baseline and return the click counts.

    Draw order per baseline is fixed: drift (if any), then the two binomial
    count draws, then the four crosstalk draws, so identical seeds give
    identical records.  ``drift_rad`` overrides the random drift with a fixed
    value (scalar: shared by both settings, tuple: per setting).
    """
    phi_rad = check_finite("phi_rad", phi_rad)
    m_per_setting = check_positive_int("m_per_setting", m_per_setting)
    rng = as_generator(seed)

    if drift_rad is not None:
        pair = (drift_rad, drift_rad) if isinstance(drift_rad, (int, float)) else (
            float(drift_rad[0]),
            float(drift_rad[1]),
        )
        pair = (float(pair[0]), float(pair[1]))
        p, pbar = _setting_probabilities(phi_rad, noise, pair)
    elif noise.drift_granularity == "photon":
        p, pbar = _setting_probabilities(phi_rad, noise, None)
    else:
        p, pbar = _setting_probabilities(phi_rad, noise, _drift_pair(noise, rng))

    m_raw = int(rng.binomial(m_per_setting, p))
    mbar_raw = int(rng.binomial(m_per_setting, pbar))
    _, m = apply_flipping(
        (m_per_setting - m_raw, m_raw), (noise.flip_a, noise.flip_b), rng
    )
    _, mbar = apply_flipping(
        (m_per_setting - mbar_raw, mbar_raw), (noise.flip_a2, noise.flip_b2), rng
    )
    return DetectionRecord(m=m, big_m=m_per_setting, mbar=mbar, big_mbar=m_per_setting)


def expected_baseline(
    phi_rad: float,
    noise: NoiseModel,
    *,
    drift_rad: float | tuple[float, float] | None = None,
) -> DetectionRecord:
    """Asymptotic counts (per unit sample) of one baseline.

    Used by the robustness checks that replace sampling with expectations.
    A fixed ``drift_rad`` shifts the phase; otherwise per-photon granularity
    averages the drift into the contrast, and the remaining granularities
    default to zero drift.
    """
    phi_rad = check_finite("phi_rad", phi_rad)
    if drift_rad is not None:
        pair = (
            (float(drift_rad), float(drift_rad))
            if isinstance(drift_rad, (int, float))
            else (float(drift_rad[0]), float(drift_rad[1]))
        )
        p, pbar = _setting_probabilities(phi_rad, noise, pair)
    elif noise.drift_granularity == "photon":
        p, pbar = _setting_probabilities(phi_rad, noise, None)
    else:
        p, pbar = _setting_probabilities(phi_rad, noise, (0.0, 0.0))
    _, m = expected_flipping((1.0 - p, p), (noise.flip_a, noise.flip_b))
    _, mbar = expected_flipping((1.0 - pbar, pbar), (noise.flip_a2, noise.flip_b2))
    return DetectionRecord(m=m, big_m=1.0, mbar=mbar, big_mbar=1.0)
