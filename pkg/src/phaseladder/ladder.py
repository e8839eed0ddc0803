"""Baseline ladder geometry: K receiver pairs with doubling separations."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .validation import check_positive, check_positive_int


@dataclass(frozen=True)
class ArrayConfig:
    """Geometry of the doubling-baseline array.

    The shortest baseline is tied to the prior angular bound,
    ``l1_m = wavelength_m / theta_bar_rad``, so that the base phase of any
    admissible angle stays inside one full turn.  Baseline ``k`` is
    ``2**(k-1)`` times the shortest one.

    Parameters
    ----------
    wavelength_m:
        Operating wavelength in metres.
    theta_bar_rad:
        Prior bound on the unknown angle: ``0 <= theta < theta_bar_rad``.
    k_count:
        Number of baselines ``K >= 1``.
    """

    wavelength_m: float
    theta_bar_rad: float
    k_count: int

    def __post_init__(self) -> None:
        check_positive("wavelength_m", self.wavelength_m)
        check_positive("theta_bar_rad", self.theta_bar_rad)
        check_positive_int("k_count", self.k_count)

    @property
    def l1_m(self) -> float:
        """Shortest baseline length, wavelength / angular bound."""
        return self.wavelength_m / self.theta_bar_rad

    def lk_m(self, k: int) -> float:
        """Length of baseline ``k`` (1-indexed): ``2**(k-1) * l1_m``."""
        k = check_positive_int("k", k)
        if k > self.k_count:
            raise ValueError(f"k must be <= k_count={self.k_count}, got {k}")
        return self.l1_m * 2.0 ** (k - 1)

    @property
    def baseline_lengths_m(self) -> tuple[float, ...]:
        return tuple(self.lk_m(k) for k in range(1, self.k_count + 1))

    @classmethod
    def from_max_baseline(
        cls, wavelength_m: float, theta_bar_rad: float, max_baseline_m: float
    ) -> "ArrayConfig":
        """Build a config from the longest baseline instead of K.

        K is recovered from ``log2(max_baseline / l1) + 1`` and rounded to the
        nearest integer; the ladder then uses the exact doubled lengths, so a
        nominal input like 1.07 km maps onto K = 15 with L_K = 1070.16 m.
        """
        check_positive("wavelength_m", wavelength_m)
        check_positive("theta_bar_rad", theta_bar_rad)
        check_positive("max_baseline_m", max_baseline_m)
        l1 = wavelength_m / theta_bar_rad
        if max_baseline_m < l1:
            raise ValueError(
                f"max_baseline_m={max_baseline_m!r} is shorter than the smallest "
                f"admissible baseline l1={l1!r}"
            )
        k = round(math.log2(max_baseline_m / l1)) + 1
        return cls(wavelength_m, theta_bar_rad, max(1, int(k)))
