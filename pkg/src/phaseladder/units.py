"""Angle unit conversions. All internal math is in radians."""

import math

# 1 arcsecond in radians; the single place this constant is defined.
ARCSEC_TO_RAD = math.pi / 648000.0
MAS_TO_RAD = ARCSEC_TO_RAD / 1000.0


def arcsec_to_rad(x: float) -> float:
    return x * ARCSEC_TO_RAD


def rad_to_arcsec(x: float) -> float:
    return x / ARCSEC_TO_RAD


def mas_to_rad(x: float) -> float:
    return x * MAS_TO_RAD


def rad_to_mas(x: float) -> float:
    return x / MAS_TO_RAD
