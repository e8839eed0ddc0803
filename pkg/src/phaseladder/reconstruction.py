"""Modular phase arithmetic and the bit-by-bit reconstruction of the base phase.

The estimation target is the phase ``phi_1`` of the shortest baseline, which
maps linearly onto the source angle.  Each longer baseline doubles the phase,
so only its value modulo ``2*pi`` is observable.  The reconstruction combines
the wrapped observations of all K baselines through a halving iteration in
which the contribution of observation errors shrinks by a factor of two per
rung, leaving a terminal uncertainty proportional to ``2**-K``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .ladder import ArrayConfig
from .validation import TWO_PI, check_finite, check_phase, check_wrapped_error


def mod_2pi(x: float) -> float:
    """Reduce a real phase into [0, 2*pi).

    Computed as ``x - 2*pi*floor(x / (2*pi))`` with a guard against the
    half-open boundary collapsing under floating-point rounding.
    """
    x = check_finite("x", x)
    r = x - TWO_PI * math.floor(x / TWO_PI)
    if r >= TWO_PI:
        r -= TWO_PI
    if r < 0.0:
        r += TWO_PI
        if r >= TWO_PI:  # |x| below one ulp of 2*pi
            r = 0.0
    return r


def wrap_error(observed: float, exact: float) -> float:
    """The unique e in (-pi, pi] with ``observed = (exact + e) mod 2*pi``.

    A naive difference misrepresents the error when the two phases sit on
    opposite sides of the 0/2*pi seam; this is the circular discrepancy.
    """
    observed = check_phase("observed", observed)
    exact = check_phase("exact", exact)
    e = math.fmod(observed - exact, TWO_PI)
    if e <= -math.pi:
        e += TWO_PI
    elif e > math.pi:
        e -= TWO_PI
    return e


def circular_distance(a: float, b: float) -> float:
    """Distance between two reduced phases on the circle, in [0, pi]."""
    d = abs(mod_2pi(a) - mod_2pi(b))
    return min(d, TWO_PI - d)


def residual(obs_k: float, obs_k1: float) -> float:
    """Observable combination of two consecutive rungs.

    ``(obs_k1 - 2*obs_k + pi) mod 2*pi``; equals pi exactly when the pair of
    observations is mutually consistent (error-free doubling).
    """
    obs_k = check_phase("obs_k", obs_k)
    obs_k1 = check_phase("obs_k1", obs_k1)
    return mod_2pi(obs_k1 - 2.0 * obs_k + math.pi)


def check_halving_condition(e_k: float, e_k1: float) -> bool:
    """Whether a consecutive error pair keeps the halving identity slip-free.

    True iff ``|e_k1 - 2*e_k| < pi``.  Under this condition the doubled offset
    of rung k equals the offset of rung k+1 plus its residual, with no hidden
    multiple of 2*pi.  Inputs are observation errors in (-pi, pi].
    """
    e_k = check_finite("e_k", e_k)
    e_k1 = check_finite("e_k1", e_k1)
    return abs(e_k1 - 2.0 * e_k) < math.pi


@dataclass(frozen=True)
class PhaseVector:
    """Per-baseline true phases (unreduced) and observed phases (reduced).

    True phases for k > 1 may exceed 2*pi; only observed values are wrapped.
    """

    true_phase_rad: tuple[float, ...]
    observed_phase_rad: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.true_phase_rad) != len(self.observed_phase_rad):
            raise ValueError(
                "true_phase_rad and observed_phase_rad must have equal length"
            )
        if not self.true_phase_rad:
            raise ValueError("PhaseVector needs at least one baseline")
        for i, p in enumerate(self.true_phase_rad):
            check_finite(f"true_phase_rad[{i}]", p)
        for i, p in enumerate(self.observed_phase_rad):
            check_phase(f"observed_phase_rad[{i}]", p)

    @property
    def k_count(self) -> int:
        return len(self.true_phase_rad)

    @property
    def reduced_true_phase_rad(self) -> tuple[float, ...]:
        return tuple(mod_2pi(p) for p in self.true_phase_rad)

    @classmethod
    def from_angle(
        cls,
        theta_rad: float,
        config: ArrayConfig,
        errors_rad: Sequence[float] | None = None,
    ) -> "PhaseVector":
        """Phases of a source at ``theta_rad``: ``2*pi*L_k*theta/lambda``.

        With ``errors_rad`` given (one value in (-pi, pi] per baseline), the
        observed phases are the wrapped true phases shifted by those errors;
        otherwise observations are error-free.
        """
        theta_rad = check_finite("theta_rad", theta_rad)
        true = tuple(
            TWO_PI * config.lk_m(k) * theta_rad / config.wavelength_m
            for k in range(1, config.k_count + 1)
        )
        if errors_rad is None:
            observed = tuple(mod_2pi(p) for p in true)
        else:
            if len(errors_rad) != config.k_count:
                raise ValueError("errors_rad must supply one error per baseline")
            errors = [check_wrapped_error(f"errors_rad[{i}]", e) for i, e in enumerate(errors_rad)]
            observed = tuple(mod_2pi(p + e) for p, e in zip(true, errors))
        return cls(true, observed)


@dataclass(frozen=True)
class ReconstructionResult:
    """Outcome of folding K wrapped observations into the base phase."""

    phi1_rad: float
    theta_rad: float
    residuals_rad: tuple[float, ...]
    delta_phi_bound_rad: float
    delta_theta_bound_rad: float


def fold_observations(observed: Sequence[float]) -> tuple[float, tuple[float, ...]]:
    """Core halving iteration over a list of wrapped observations.

    Returns the reconstructed base value in [0, 2*pi) together with the
    residuals of rungs 2..K.  Shared by the single-source and the
    reference-differenced estimators.
    """
    if len(observed) < 1:
        raise ValueError("need at least one observed phase")
    obs = [check_phase(f"observed[{i}]", p) for i, p in enumerate(observed)]
    k_count = len(obs)
    residuals = tuple(residual(obs[k - 2], obs[k - 1]) for k in range(2, k_count + 1))
    acc = obs[0] - math.pi
    for k, r in zip(range(2, k_count + 1), residuals):
        acc += 0.5 ** (k - 1) * r
    acc += 0.5 ** (k_count - 1) * math.pi
    return mod_2pi(acc), residuals


def phi_to_theta(phi1_rad: float, config: ArrayConfig) -> float:
    """Angle from the base phase: ``lambda * phi1 / (2*pi * L1)``."""
    phi1_rad = check_phase("phi1_rad", phi1_rad)
    return config.wavelength_m * phi1_rad / (TWO_PI * config.l1_m)


def precision_bounds(config: ArrayConfig) -> tuple[float, float]:
    """Phase and angle uncertainty after folding all K baselines.

    ``delta_phi = pi / 2**K`` and ``delta_theta = lambda / (4 * L_K)``, which
    for the tied ladder equals ``theta_bar / 2**(K+1)``.  Both angle forms are
    evaluated and must agree to 1e-12 relative.
    """
    delta_phi = math.pi / 2.0**config.k_count
    via_lk = config.wavelength_m / (4.0 * config.lk_m(config.k_count))
    via_bound = config.theta_bar_rad / 2.0 ** (config.k_count + 1)
    if abs(via_lk - via_bound) > 1e-12 * via_bound:
        raise AssertionError(
            "inconsistent precision bounds; ladder lengths do not match the "
            "angular bound"
        )
    return delta_phi, via_lk


def reconstruct_phi1(
    observed: Union[PhaseVector, Sequence[float]], config: ArrayConfig
) -> ReconstructionResult:
    """Reconstruct the base phase (and angle) from wrapped observations.

    ``observed`` is either a PhaseVector (its observed side is used) or a
    plain sequence of K phases in [0, 2*pi); K must match the config.

    With every consecutive error pair satisfying the slip-free condition of
    :func:`check_halving_condition`, the result deviates from the true base phase by
    exactly ``|e_K| / 2**(K-1)``, where ``e_K`` is the last rung's observation
    error.  The reported ``delta_phi_bound_rad`` is ``pi / 2**K``, attained
    when ``|e_K| <= pi/2`` (guaranteed whenever observed and exact phases
    share a quadrant); the worst admissible deviation is twice that.
    """
    if isinstance(observed, PhaseVector):
        obs_list: Sequence[float] = observed.observed_phase_rad
    else:
        obs_list = tuple(observed)
    if len(obs_list) != config.k_count:
        raise ValueError(
            f"expected {config.k_count} observed phases, got {len(obs_list)}"
        )
    phi1, residuals = fold_observations(obs_list)
    delta_phi, delta_theta = precision_bounds(config)
    return ReconstructionResult(
        phi1_rad=phi1,
        theta_rad=phi_to_theta(phi1, config),
        residuals_rad=residuals,
        delta_phi_bound_rad=delta_phi,
        delta_theta_bound_rad=delta_theta,
    )
