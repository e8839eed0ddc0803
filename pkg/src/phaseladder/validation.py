"""Input validation helpers shared across the package.

Every public entry point validates its scalar inputs through these helpers so
error messages consistently carry the offending parameter name and the
expected domain.
"""

from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi

SeedLike = "int | np.random.SeedSequence | np.random.Generator"


def check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def check_positive(name: str, value: float) -> float:
    value = check_finite(name, value)
    if value <= 0.0:
        raise ValueError(f"{name} must be strictly positive, got {value!r}")
    return value


def check_non_negative(name: str, value: float) -> float:
    value = check_finite(name, value)
    if value < 0.0:
        raise ValueError(f"{name} must be non-negative, got {value!r}")
    return value


def check_positive_int(name: str, value: int) -> int:
    if int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value!r}")
    return value


def check_probability(name: str, value: float) -> float:
    value = check_finite(name, value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def check_rate(name: str, value: float) -> float:
    """Detector flipping rate: [0, 1). Rates >= 0.5 are legal but outside the
    regime where quadrant preservation is guaranteed."""
    value = check_finite(name, value)
    if not 0.0 <= value < 1.0:
        raise ValueError(f"{name} must lie in [0, 1), got {value!r}")
    return value


def check_phase(name: str, value: float) -> float:
    """A reduced phase: radians in [0, 2*pi)."""
    value = check_finite(name, value)
    if not 0.0 <= value < TWO_PI:
        raise ValueError(f"{name} must lie in [0, 2*pi) radians, got {value!r}")
    return value


def check_wrapped_error(name: str, value: float) -> float:
    """An observation error: radians in (-pi, pi]."""
    value = check_finite(name, value)
    if not -math.pi < value <= math.pi:
        raise ValueError(f"{name} must lie in (-pi, pi] radians, got {value!r}")
    return value


def as_seed_sequence(seed) -> np.random.SeedSequence:
    """Coerce an integer seed (or pass through a SeedSequence) for spawning
    independent child streams."""
    if isinstance(seed, np.random.SeedSequence):
        return seed
    if isinstance(seed, (int, np.integer)):
        if seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
        return np.random.SeedSequence(int(seed))
    raise TypeError(f"seed must be an int or SeedSequence, got {type(seed).__name__}")


def as_generator(seed) -> np.random.Generator:
    """Coerce a seed into a Generator; an existing Generator passes through
    (and will be consumed by the caller)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(as_seed_sequence(seed))
