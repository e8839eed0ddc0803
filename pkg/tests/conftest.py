import pytest

from phaseladder import ArrayConfig, NoiseModel, arcsec_to_rad


@pytest.fixture
def canonical_array() -> ArrayConfig:
    """The canonical configuration used throughout: 380 nm, 1.2 as prior,
    15 baselines (longest ~1.07 km)."""
    return ArrayConfig(wavelength_m=380e-9, theta_bar_rad=arcsec_to_rad(1.2), k_count=15)


@pytest.fixture
def quiet() -> NoiseModel:
    return NoiseModel()
