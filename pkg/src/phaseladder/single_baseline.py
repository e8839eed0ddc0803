"""Analytic model of the conventional single-baseline method.

One baseline of length X observes one wrapped phase, so the angle uncertainty
can shrink only as fast as the phase uncertainty: shot noise pushes the
photon cost of small uncertainties quadratically.  These closed forms supply
the comparison curves against the ladder estimator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .validation import TWO_PI, check_non_negative, check_phase, check_positive


@dataclass(frozen=True)
class SingleBaselineModel:
    """Single baseline of length ``l1_m`` with channel noise ``sigma_rad``.

    The baseline must keep the phase of any admissible angle observable:
    ``l1_m * theta_bar_rad <= wavelength_m``, with equality at the canonical
    choice ``l1 = wavelength / theta_bar``.
    """

    wavelength_m: float
    l1_m: float
    theta_bar_rad: float
    sigma_rad: float = 0.0

    def __post_init__(self) -> None:
        check_positive("wavelength_m", self.wavelength_m)
        check_positive("l1_m", self.l1_m)
        check_positive("theta_bar_rad", self.theta_bar_rad)
        check_non_negative("sigma_rad", self.sigma_rad)
        if self.l1_m * self.theta_bar_rad > self.wavelength_m * (1.0 + 1e-12):
            raise ValueError(
                "baseline too long for the angular prior: need "
                "l1_m * theta_bar_rad <= wavelength_m"
            )


def single_baseline_theta(phi_rad: float, model: SingleBaselineModel) -> float:
    """Angle from one observed phase: ``lambda * phi / (2*pi * X)``."""
    phi_rad = check_phase("phi_rad", phi_rad)
    return model.wavelength_m * phi_rad / (TWO_PI * model.l1_m)


def precision_limit(delta_phi_rad: float, model: SingleBaselineModel) -> float:
    """Best angle uncertainty for a given phase uncertainty.

    ``delta_theta = theta_bar * delta_phi / (2*pi)`` at the longest
    admissible baseline; the baseline length cancels out.
    """
    delta_phi_rad = check_non_negative("delta_phi_rad", delta_phi_rad)
    return model.theta_bar_rad * delta_phi_rad / TWO_PI


def single_baseline_sigma_theta(n_photons: float, model: SingleBaselineModel) -> float:
    """Shot-noise floor of the angle estimate:
    ``lambda * (1 + sigma) / (2*pi * L1 * sqrt(N))`` (the lower bound is
    taken)."""
    n_photons = check_positive("n_photons", n_photons)
    return (
        model.wavelength_m
        * (1.0 + model.sigma_rad)
        / (TWO_PI * model.l1_m * math.sqrt(n_photons))
    )


def normal_cdf(x: float) -> float:
    """Standard normal CDF via erfc; deterministic, |error| < 1e-10."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


_ACKLAM_A = (
    -3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
    1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00,
)
_ACKLAM_B = (
    -5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
    6.680131188771972e01, -1.328068155288572e01,
)
_ACKLAM_C = (
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
    -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00,
)
_ACKLAM_D = (
    7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
    3.754408661907416e00,
)


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF: Acklam's rational approximation refined
    by one Halley step against the erfc-based CDF."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    a, b, c, d = _ACKLAM_A, _ACKLAM_B, _ACKLAM_C, _ACKLAM_D
    plow, phigh = 0.02425, 1.0 - 0.02425
    if p < plow:
        q = math.sqrt(-2.0 * math.log(p))
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    elif p > phigh:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    else:
        q = p - 0.5
        r = q * q
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q / (
            ((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0
        )
    # Halley refinement: drives the residual below double-precision CDF noise.
    err = normal_cdf(x) - p
    pdf = math.exp(-0.5 * x * x) / math.sqrt(TWO_PI)
    if pdf > 0.0:
        u = err / pdf
        x -= u / (1.0 + 0.5 * x * u)
    return x


def single_baseline_failure(delta_theta_rad: float, sigma_theta_rad: float) -> float:
    """Probability the Gaussian angle estimate misses by more than the
    tolerance: ``2 * F(-delta_theta; 0, sigma_theta)``."""
    delta_theta_rad = check_non_negative("delta_theta_rad", delta_theta_rad)
    sigma_theta_rad = check_non_negative("sigma_theta_rad", sigma_theta_rad)
    if sigma_theta_rad == 0.0:
        return 0.0 if delta_theta_rad > 0.0 else 1.0
    return 2.0 * normal_cdf(-delta_theta_rad / sigma_theta_rad)


def photons_for_failure(
    target_eps: float, delta_theta_rad: float, model: SingleBaselineModel
) -> int:
    """Smallest photon count whose failure probability is <= the target.

    Closed-form inversion of the Gaussian quantile, then adjusted by +-1
    photon so the returned count is exactly minimal.
    """
    if not 0.0 < target_eps < 1.0:
        raise ValueError(f"target_eps must lie in (0, 1), got {target_eps!r}")
    delta_theta_rad = check_positive("delta_theta_rad", delta_theta_rad)
    z = -normal_quantile(target_eps / 2.0)
    scale = model.wavelength_m * (1.0 + model.sigma_rad) / (TWO_PI * model.l1_m)
    n = max(1, math.ceil((z * scale / delta_theta_rad) ** 2))
    while n > 1 and single_baseline_failure(
        delta_theta_rad, single_baseline_sigma_theta(n - 1, model)
    ) <= target_eps:
        n -= 1
    while single_baseline_failure(
        delta_theta_rad, single_baseline_sigma_theta(n, model)
    ) > target_eps:
        n += 1
    return n
