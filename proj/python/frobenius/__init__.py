"""High-precision radial Schroedinger levels from truncated power series."""

from ._core import (
    Error,
    anharmonic_energy,
    confined_levels,
    default_digits,
    level_crossing,
    oracle_levels,
    series_coefficients,
    unconfined_level,
)

__all__ = [
    "Error",
    "anharmonic_energy",
    "confined_levels",
    "default_digits",
    "level_crossing",
    "oracle_levels",
    "series_coefficients",
    "unconfined_level",
]
