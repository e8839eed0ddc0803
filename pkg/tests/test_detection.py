import math

import numpy as np
import pytest

from phaseladder import (
    ArrayConfig,
    DetectionRecord,
    NoiseModel,
    PhaseVector,
    apply_flipping,
    arcsec_to_rad,
    circular_distance,
    click_probabilities,
    expected_baseline,
    expected_flipping,
    extract_phase,
    mod_2pi,
    quadrant,
    reconstruct_phi1,
    sample_counts,
    simulate_baseline,
)

TWO_PI = 2.0 * math.pi


# -------------------------------------------------------- probabilities

def test_click_probabilities_zero_phase():
    assert click_probabilities(0.0, 0.0) == pytest.approx((0.0, 0.5), abs=1e-15)


def test_click_probabilities_quadrature():
    p, pbar = click_probabilities(math.pi / 2, 0.0)
    assert p == pytest.approx(0.5, abs=1e-15)
    assert pbar == pytest.approx(1.0, abs=1e-15)


def test_click_probabilities_shifted():
    # direct trig evaluation at phi + drift = pi/3 + 0.1
    p, pbar = click_probabilities(math.pi / 3, 0.1)
    assert p == pytest.approx(0.29447809616186826, rel=1e-12)
    assert pbar == pytest.approx(0.9558077961627574, rel=1e-12)


def test_click_probabilities_stay_in_unit_interval():
    rng = np.random.default_rng(2)
    for phi, drift in rng.uniform(-30, 30, (2000, 2)):
        p, pbar = click_probabilities(float(phi), float(drift))
        assert 0.0 <= p <= 1.0
        assert 0.0 <= pbar <= 1.0


# -------------------------------------------------------------- sampling

def test_sample_counts_impossible_event():
    assert sample_counts(0.0, 100, 1) == 0


def test_sample_counts_certain_event():
    assert sample_counts(1.0, 100, 1) == 100


def test_sample_counts_law_of_large_numbers():
    draws = np.array([sample_counts(0.5, 1_000_000, seed) for seed in range(1000)])
    # binomial(1e6, .5): mean 5e5, std 500
    assert abs(draws.mean() - 5e5) < 70  # ~4.4 stderr
    assert abs(draws.std() - 500.0) < 35  # ~5 stderr of the sample std


def test_sample_counts_deterministic():
    assert sample_counts(0.3, 1000, 99) == sample_counts(0.3, 1000, 99)


# -------------------------------------------------------------- flipping

def test_apply_flipping_noiseless_identity():
    assert apply_flipping((123, 456), (0.0, 0.0), 0) == (123, 456)


def test_apply_flipping_expectation():
    # one-sided crosstalk at 10%: 1000 a-clicks leak ~100 to b
    draws = np.array(
        [apply_flipping((1000, 0), (0.1, 0.0), seed) for seed in range(500)]
    )
    assert abs(draws[:, 0].mean() - 900.0) < 2.0
    assert abs(draws[:, 1].mean() - 100.0) < 2.0


def test_apply_flipping_symmetric_fixed_point():
    draws = np.array(
        [apply_flipping((500, 500), (0.2, 0.2), seed) for seed in range(500)]
    )
    assert abs(draws[:, 0].mean() - 500.0) < 2.5
    assert abs(draws[:, 1].mean() - 500.0) < 2.5


def test_apply_flipping_conserves_total():
    rng = np.random.default_rng(5)
    for _ in range(300):
        n_a, n_b = int(rng.integers(0, 2000)), int(rng.integers(0, 2000))
        p_a, p_b = rng.uniform(0, 1, 2)
        out = apply_flipping((n_a, n_b), (float(p_a) * 0.99, float(p_b) * 0.99), rng)
        assert out[0] + out[1] == n_a + n_b
        assert out[0] >= 0 and out[1] >= 0


def test_expected_flipping_matches_linear_mixing():
    na, nb = expected_flipping((1000.0, 0.0), (0.1, 0.0))
    assert (na, nb) == pytest.approx((900.0, 100.0), rel=1e-15)
    assert expected_flipping((500.0, 500.0), (0.2, 0.2)) == pytest.approx((500.0, 500.0))


# ------------------------------------------------------ phase extraction

def _record(m_frac: float, mbar_frac: float, big: int = 1000) -> DetectionRecord:
    return DetectionRecord(
        m=m_frac * big, big_m=big, mbar=mbar_frac * big, big_mbar=big
    )


def test_extract_phase_quadrature():
    est = extract_phase(_record(0.5, 1.0))
    assert est.phase_rad == pytest.approx(math.pi / 2, abs=1e-12)
    assert not est.degenerate
    # the half-sum variant agrees in the first quadrant
    literal = extract_phase(_record(0.5, 1.0), literal_halfsum=True)
    assert literal.phase_rad == pytest.approx(math.pi / 2, abs=1e-12)


def test_extract_phase_half_turn_needs_quadrant_logic():
    est = extract_phase(_record(1.0, 0.5))
    assert est.phase_rad == pytest.approx(math.pi, abs=1e-12)
    # the plain half-sum of inverse trig values lands in the wrong quadrant
    literal = extract_phase(_record(1.0, 0.5), literal_halfsum=True)
    assert literal.phase_rad == pytest.approx(math.pi / 2, abs=1e-12)


def test_extract_phase_zero():
    assert extract_phase(_record(0.0, 0.5)).phase_rad == pytest.approx(0.0, abs=1e-12)


def test_extract_phase_degenerate_pair():
    est = extract_phase(_record(0.5, 0.5))
    assert est.phase_rad == 0.0
    assert est.degenerate


def test_extract_phase_rejects_empty_settings():
    with pytest.raises(ValueError):
        extract_phase(DetectionRecord(m=0, big_m=0, mbar=1, big_mbar=2))
    with pytest.raises(ValueError):
        extract_phase(DetectionRecord(m=0, big_m=2, mbar=0, big_mbar=0))


def test_detection_record_validation():
    with pytest.raises(ValueError):
        DetectionRecord(m=5, big_m=4, mbar=0, big_mbar=1)
    with pytest.raises(ValueError):
        DetectionRecord(m=-1, big_m=4, mbar=0, big_mbar=1)


def test_extract_inverts_expected_counts(quiet):
    rng = np.random.default_rng(13)
    for phi in rng.uniform(0.0, TWO_PI, 500):
        rec = expected_baseline(float(phi), quiet)
        assert circular_distance(extract_phase(rec).phase_rad, float(phi)) < 1e-9


# --------------------------------------------------------------- quadrant

def test_quadrant_examples():
    assert quadrant(math.pi / 4) == 1
    assert quadrant(math.pi) == 3  # boundary belongs to the upper quadrant
    assert quadrant(5.0) == 4


def test_quadrant_matches_sign_pair():
    rng = np.random.default_rng(41)
    for phi in rng.uniform(0.0, TWO_PI, 3000):
        phi = float(phi)
        if abs(math.cos(phi)) < 1e-9 or abs(math.sin(phi)) < 1e-9:
            continue
        signs = (math.copysign(1, -math.cos(phi)), math.copysign(1, math.sin(phi)))
        expected = {(-1, 1): 1, (1, 1): 2, (1, -1): 3, (-1, -1): 4}[signs]
        assert quadrant(phi) == expected


def test_quadrant_rejects_out_of_range():
    with pytest.raises(ValueError):
        quadrant(-0.1)


# ------------------------------------------------------------- simulation

def test_simulate_baseline_quadrature_concentration(quiet):
    rec = simulate_baseline(math.pi / 2, 1_000_000, quiet, seed=7)
    m_big = rec.big_m
    assert rec.mbar == m_big  # pbar = 1 exactly
    assert abs(rec.m / m_big - 0.5) < 3.0 / math.sqrt(m_big)


def test_simulate_baseline_zero_phase_never_clicks(quiet):
    for m in (1, 10, 1000):
        rec = simulate_baseline(0.0, m, quiet, seed=3)
        assert rec.m == 0


def test_simulate_baseline_deterministic(quiet):
    noise = NoiseModel(sigma_rad=0.4, flip_a=0.05, flip_b=0.02)
    a = simulate_baseline(1.3, 5000, noise, seed=11)
    b = simulate_baseline(1.3, 5000, noise, seed=11)
    assert a == b


def test_simulate_baseline_gaussian_drift_mean():
    # mean click fraction at phi=0 equals (1 - exp(-sigma^2/2))/2
    noise = NoiseModel(sigma_rad=math.pi / 3, drift_granularity="dataset")
    big_m = 100_000
    fractions = [
        simulate_baseline(0.0, big_m, noise, seed=seed).m / big_m
        for seed in range(800)
    ]
    assert abs(np.mean(fractions) - 0.21103755175363537) < 0.035  # ~4 stderr


def test_simulate_baseline_photon_granularity_mean():
    noise = NoiseModel(sigma_rad=math.pi / 3, drift_granularity="photon")
    big_m = 100_000
    fractions = [
        simulate_baseline(0.0, big_m, noise, seed=seed).m / big_m
        for seed in range(100)
    ]
    # same marginal mean, far smaller spread than dataset granularity
    assert abs(np.mean(fractions) - 0.21103755175363537) < 0.001


def test_simulate_baseline_fixed_drift_override(quiet):
    rec = simulate_baseline(0.0, 1_000_000, quiet, seed=5, drift_rad=math.pi)
    assert rec.m == rec.big_m  # p = (1 - cos(pi))/2 = 1


# ------------------------------------------ robustness of the full chain

def _asymptotic_observed(phi: float, noise: NoiseModel) -> float:
    return extract_phase(expected_baseline(phi, noise)).phase_rad


def test_flipping_preserves_quadrants_and_success(canonical_array):
    # symmetric crosstalk within each data set keeps every quadrant, hence
    # the folded estimate lands within the ladder tolerance
    rng = np.random.default_rng(43)
    for _ in range(150):
        r1, r2 = rng.uniform(0.0, 0.5, 2)
        noise = NoiseModel(
            flip_a=float(r1), flip_b=float(r1), flip_a2=float(r2), flip_b2=float(r2)
        )
        theta = float(rng.uniform(0.0, canonical_array.theta_bar_rad))
        pv = PhaseVector.from_angle(theta, canonical_array)
        observed = []
        for phi in pv.observed_phase_rad:
            est = _asymptotic_observed(phi, noise)
            assert quadrant(est) == quadrant(phi)
            observed.append(est)
        result = reconstruct_phi1(observed, canonical_array)
        deviation = circular_distance(result.phi1_rad, pv.observed_phase_rad[0])
        assert deviation <= result.delta_phi_bound_rad


def test_equal_flipping_rates_reconstruct_exactly(canonical_array):
    rng = np.random.default_rng(47)
    for _ in range(100):
        r = float(rng.uniform(0.0, 0.5))
        noise = NoiseModel(flip_a=r, flip_b=r, flip_a2=r, flip_b2=r)
        theta = float(rng.uniform(0.0, canonical_array.theta_bar_rad))
        pv = PhaseVector.from_angle(theta, canonical_array)
        observed = [_asymptotic_observed(p, noise) for p in pv.observed_phase_rad]
        result = reconstruct_phi1(observed, canonical_array)
        assert circular_distance(result.phi1_rad, pv.observed_phase_rad[0]) < 1e-9


def test_sign_preservation_symmetric_rates():
    rng = np.random.default_rng(53)
    for _ in range(500):
        p = float(rng.uniform(0.0, 0.5))
        phi = float(rng.uniform(0.0, TWO_PI))
        n_b = 0.5 * (1 - math.cos(phi))
        n_a = 1.0 - n_b
        fa, fb = expected_flipping((n_a, n_b), (p, p))
        if abs(n_b - n_a) > 1e-12:
            assert math.copysign(1, fb - fa) == math.copysign(1, n_b - n_a)


def test_asymmetric_rates_can_flip_detector_majority():
    # why the symmetric restriction exists: one-sided crosstalk below 50%
    # can still invert the majority detector near a quadrant boundary
    n_b, n_a = 0.52, 0.48
    fa, fb = expected_flipping((n_a, n_b), (0.0, 0.4))
    assert n_b > n_a and fb < fa


def test_shared_drift_shifts_extraction_exactly(quiet):
    rng = np.random.default_rng(59)
    for _ in range(300):
        phi = float(rng.uniform(0.0, TWO_PI))
        d = float(rng.uniform(-math.pi, math.pi))
        rec = expected_baseline(phi, quiet, drift_rad=d)
        est = extract_phase(rec).phase_rad
        assert circular_distance(est, mod_2pi(phi + d)) < 1e-9


# ----------------------------------------------------------- noise model

def test_noise_model_validation():
    with pytest.raises(ValueError):
        NoiseModel(sigma_rad=-0.1)
    with pytest.raises(ValueError):
        NoiseModel(flip_a=1.0)
    with pytest.raises(ValueError):
        NoiseModel(l0_m=0.0)
    with pytest.raises(ValueError):
        NoiseModel(drift_granularity="per-run")


def test_noise_model_contrast():
    assert NoiseModel(sigma_rad=0.0).drift_contrast == 1.0
    s = math.pi / 3
    assert NoiseModel(sigma_rad=s).drift_contrast == pytest.approx(
        math.exp(-s * s / 2), rel=1e-15
    )
