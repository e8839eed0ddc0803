import math

import numpy as np
import pytest

from phaseladder import (
    ArrayConfig,
    NoiseModel,
    arcsec_to_rad,
    attenuation,
    average_failure,
    circular_distance,
    photon_budget,
    run_trial,
    sweep,
)

TWO_PI = 2.0 * math.pi


# -------------------------------------------------------------- run_trial

def test_run_trial_noiseless_large_budget(canonical_array, quiet):
    rng = np.random.default_rng(61)
    for t in range(50):
        theta = float(rng.uniform(0.0, canonical_array.theta_bar_rad))
        outcome = run_trial(theta, canonical_array, quiet, 10_000, seed=t)
        assert outcome.success
        assert len(outcome.records) == canonical_array.k_count


def test_run_trial_zero_angle_asymptotic(canonical_array, quiet):
    outcome = run_trial(0.0, canonical_array, quiet, 1, seed=0, asymptotic=True)
    assert outcome.estimated_phi1_rad == pytest.approx(0.0, abs=1e-12)
    assert outcome.success


def test_run_trial_single_photon_noisy(canonical_array):
    noise = NoiseModel(sigma_rad=math.pi / 3, drift_granularity="photon")
    rng = np.random.default_rng(67)
    successes = sum(
        run_trial(
            float(rng.uniform(0.0, canonical_array.theta_bar_rad)),
            canonical_array,
            noise,
            1,
            seed=t,
        ).success
        for t in range(300)
    )
    assert 0 < successes < 300


def test_run_trial_rejects_out_of_prior(canonical_array, quiet):
    with pytest.raises(ValueError):
        run_trial(canonical_array.theta_bar_rad, canonical_array, quiet, 10, seed=0)
    with pytest.raises(ValueError):
        run_trial(-1e-9, canonical_array, quiet, 10, seed=0)


def test_run_trial_wraparound_success_is_circular(canonical_array, quiet):
    # a tiny negative shared drift pushes the estimate of phi1=0 just below
    # 2*pi; circular classification accepts it, the linear variant does not
    kwargs = dict(asymptotic=True, fixed_drift_rad=-0.001)
    outcome = run_trial(0.0, canonical_array, quiet, 1, seed=0, **kwargs)
    assert outcome.estimated_phi1_rad > 6.28
    assert outcome.success
    linear = run_trial(0.0, canonical_array, quiet, 1, seed=0, circular=False, **kwargs)
    assert not linear.success


def test_run_trial_per_baseline_drift_sequence(canonical_array, quiet):
    drifts = [0.01 * k for k in range(canonical_array.k_count)]
    outcome = run_trial(
        arcsec_to_rad(0.5), canonical_array, quiet, 1, seed=0,
        asymptotic=True, fixed_drift_rad=drifts,
    )
    # last rung's drift dominates the folded deviation
    deviation = circular_distance(outcome.estimated_phi1_rad, outcome.true_phi1_rad)
    assert deviation == pytest.approx(
        drifts[-1] / 2 ** (canonical_array.k_count - 1), abs=1e-9
    )


# -------------------------------------------------------- average_failure

def test_average_failure_noiseless_is_zero(canonical_array, quiet):
    eps = average_failure(canonical_array, quiet, 10_000, trials=200, seed=1)
    assert eps == 0.0


def test_average_failure_bounded(canonical_array):
    noise = NoiseModel(sigma_rad=2.0, drift_granularity="dataset")
    eps = average_failure(canonical_array, noise, 1, trials=100, seed=2)
    assert 0.0 <= eps <= 1.0


def test_average_failure_reproducible(canonical_array):
    noise = NoiseModel(sigma_rad=math.pi / 3, drift_granularity="photon")
    a = average_failure(canonical_array, noise, 4, trials=150, seed=3)
    b = average_failure(canonical_array, noise, 4, trials=150, seed=3)
    assert a == b
    c = average_failure(canonical_array, noise, 4, trials=150, seed=4)
    assert a != c  # different master seed, different trial set


def test_average_failure_grid_mode_deterministic(canonical_array, quiet):
    a = average_failure(canonical_array, quiet, 100, trials=50, seed=5, theta_mode="grid")
    assert a == 0.0
    with pytest.raises(ValueError):
        average_failure(canonical_array, quiet, 100, trials=50, seed=5, theta_mode="maxent")


# ------------------------------------------------------------ attenuation

def test_attenuation_zero_length(quiet):
    assert attenuation(0.0, quiet) == 1.0


def test_attenuation_reference_length(quiet):
    assert attenuation(10_000.0, quiet) == pytest.approx(0.6309573444801932, rel=1e-12)


def test_attenuation_half_longest_baseline(quiet):
    assert attenuation(535.0, quiet) == pytest.approx(0.9756633693709553, rel=1e-12)


def test_attenuation_rejects_negative(quiet):
    with pytest.raises(ValueError):
        attenuation(-1.0, quiet)


# ---------------------------------------------------------- photon budget

def test_photon_budget_lossless_single_baseline():
    config = ArrayConfig(380e-9, arcsec_to_rad(1.2), 1)
    noise = NoiseModel(alpha=0.0)
    assert photon_budget(7, config, noise) == pytest.approx(14.0, rel=1e-15)


def test_photon_budget_paper_ladder(canonical_array, quiet):
    # summation oracle over the 15 ladder lengths
    expected = sum(
        2.0 / 10 ** (-0.2 * (canonical_array.lk_m(k) / 2) / 10_000.0)
        for k in range(1, 16)
    )
    budget = photon_budget(1, canonical_array, quiet)
    assert budget == pytest.approx(expected, rel=1e-12)
    assert budget == pytest.approx(30.099377399960844, rel=1e-12)


def test_photon_budget_linear_in_m(canonical_array, quiet):
    assert photon_budget(10, canonical_array, quiet) == pytest.approx(
        10 * photon_budget(1, canonical_array, quiet), rel=1e-12
    )


# ------------------------------------------------------------------ sweep

def test_sweep_single_point(canonical_array, quiet):
    result = sweep(canonical_array, quiet, [1], trials=1, seed=11)
    assert len(result.rows) == 1
    assert result.rows[0].m_per_setting == 1
    assert result.rows[0].trials == 1
    assert result.rows[0].seed == 11


def test_sweep_noiseless_grid(canonical_array, quiet):
    result = sweep(canonical_array, quiet, [100, 400], trials=40, seed=12)
    assert all(row.eps_mean == 0.0 for row in result.rows)
    budgets = [row.photon_budget for row in result.rows]
    assert budgets == sorted(budgets) and budgets[0] < budgets[1]


def test_sweep_reproducible_bitwise(canonical_array):
    noise = NoiseModel(sigma_rad=math.pi / 3, drift_granularity="photon")
    a = sweep(canonical_array, noise, [2, 8], trials=120, seed=13)
    b = sweep(canonical_array, noise, [2, 8], trials=120, seed=13)
    assert a == b


def test_sweep_statistical_monotonicity(canonical_array):
    # failure at M is at least failure at 4M, up to binomial fluctuation
    noise = NoiseModel(sigma_rad=math.pi / 3, drift_granularity="photon")
    result = sweep(canonical_array, noise, [4, 16], trials=400, seed=14)
    low, high = result.rows
    assert low.eps_mean >= high.eps_mean - 3 * math.hypot(low.eps_stderr, high.eps_stderr)


def test_sweep_validates_grid(canonical_array, quiet):
    with pytest.raises(ValueError):
        sweep(canonical_array, quiet, [], trials=1, seed=0)
    with pytest.raises(ValueError):
        sweep(canonical_array, quiet, [4, 2], trials=1, seed=0)
    with pytest.raises(ValueError):
        sweep(canonical_array, quiet, [2, 4], trials=1, seed=-3)
