"""Estimator-style front door so the reconstruction composes with sklearn.

`LadderAngleEstimator` consumes a matrix of wrapped per-baseline phase
observations, one row per measurement, and predicts source angles;
`ClickRatioPhaseExtractor` turns raw click counts into that phase matrix, so
the two chain in a Pipeline.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .detection import DetectionRecord, extract_phase
from .ladder import ArrayConfig
from .reconstruction import phi_to_theta, precision_bounds, reconstruct_phi1
from .units import arcsec_to_rad
from .validation import TWO_PI


class LadderAngleEstimator(BaseEstimator):
    """Predicts source angles from wrapped phases of a doubling baseline array.

    Parameters
    ----------
    wavelength_m : float, default=380e-9
        Operating wavelength.
    theta_bar_rad : float, default=1.2 arcseconds
        Prior bound on the angle; fixes the shortest baseline.
    n_baselines : int, default=15
        Number of ladder rungs K; inputs must have K columns.

    Attributes
    ----------
    config_ : ArrayConfig
        Resolved array geometry.
    l1_m_ : float
        Shortest baseline length.
    delta_phi_, delta_theta_ : float
        Phase and angle uncertainty of the folded estimate.

    Examples
    --------
    >>> est = LadderAngleEstimator(n_baselines=3).fit()
    >>> est.predict([[0.5, 1.0, 2.0]]).shape
    (1,)
    """

    def __init__(
        self,
        wavelength_m: float = 380e-9,
        theta_bar_rad: float = arcsec_to_rad(1.2),
        n_baselines: int = 15,
    ):
        self.wavelength_m = wavelength_m
        self.theta_bar_rad = theta_bar_rad
        self.n_baselines = n_baselines

    def fit(self, X=None, y=None):
        """Validate parameters (and X when given); the estimator is stateless."""
        self.config_ = ArrayConfig(
            wavelength_m=self.wavelength_m,
            theta_bar_rad=self.theta_bar_rad,
            k_count=self.n_baselines,
        )
        self.l1_m_ = self.config_.l1_m
        self.delta_phi_, self.delta_theta_ = precision_bounds(self.config_)
        if X is not None:
            X = self._validate_phases(X)
            self.n_features_in_ = X.shape[1]
        else:
            self.n_features_in_ = self.n_baselines
        return self

    def _validate_phases(self, X) -> np.ndarray:
        X = check_array(X, dtype=float, ensure_2d=True)
        if X.shape[1] != self.n_baselines:
            raise ValueError(
                f"X has {X.shape[1]} columns, expected n_baselines={self.n_baselines}"
            )
        if np.any(X < 0.0) or np.any(X >= TWO_PI):
            raise ValueError("observed phases must lie in [0, 2*pi)")
        return X

    def transform(self, X) -> np.ndarray:
        """Fold each row of wrapped observations into a base phase."""
        check_is_fitted(self, "config_")
        X = self._validate_phases(X)
        return np.array(
            [reconstruct_phi1(row, self.config_).phi1_rad for row in X]
        )

    def predict(self, X) -> np.ndarray:
        """Angle estimates (radians), one per row of observations."""
        phi1 = self.transform(X)
        return np.array([phi_to_theta(p, self.config_) for p in phi1])


class ClickRatioPhaseExtractor(BaseEstimator, TransformerMixin):
    """Transforms click counts into wrapped phase observations.

    Input is shaped (n_samples, n_baselines, 4) with the count quadruple
    (m, M, mbar, Mbar) in the last axis; output is (n_samples, n_baselines)
    phases in [0, 2*pi).
    """

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 3 or X.shape[2] != 4:
            raise ValueError(
                f"X must have shape (n_samples, n_baselines, 4), got {X.shape}"
            )
        out = np.empty(X.shape[:2])
        for i, sample in enumerate(X):
            for k, (m, big_m, mbar, big_mbar) in enumerate(sample):
                record = DetectionRecord(m=m, big_m=big_m, mbar=mbar, big_mbar=big_mbar)
                out[i, k] = extract_phase(record).phase_rad
        return out
