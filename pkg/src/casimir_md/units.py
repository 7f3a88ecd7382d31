"""Reduced units and their conversion to SI.

Frequencies are measured in the reference plasma frequency w_P, lengths in
k_P^-1 = c / w_P and pressures in f0 = pi^2 hbar c k_P^4 / 240. Everything
outside this module works in these reduced units with c = hbar = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

HBAR_C_EV_NM = 197.3269804
BOLTZMANN_EV_PER_K = 8.617333262e-5
EV_TO_JOULE = 1.602176634e-19


@dataclass(frozen=True)
class ReferenceScale:
    """Unit system fixed by the plasma energy hbar*w_P of the reference metal (eV)."""

    plasma_energy: float

    def __post_init__(self):
        if not (math.isfinite(self.plasma_energy) and self.plasma_energy > 0):
            raise ValueError(f"plasma_energy must be positive, got {self.plasma_energy!r}")


GOLD = ReferenceScale(9.0)


def length_unit_nm(scale: ReferenceScale) -> float:
    """Length unit k_P^-1 in nanometres."""
    return HBAR_C_EV_NM / scale.plasma_energy


def force_unit_si(scale: ReferenceScale) -> float:
    """Pressure unit f0 in N/m^2."""
    k_p = 1e9 / length_unit_nm(scale)  # 1/m
    hbar_c = HBAR_C_EV_NM * 1e-9 * EV_TO_JOULE  # J m
    return math.pi ** 2 * hbar_c * k_p ** 4 / 240.0


def distance_si(scale: ReferenceScale, d_reduced: float) -> float:
    """Gap width in micrometres for a reduced distance k_P d."""
    if not d_reduced > 0:
        raise ValueError(f"reduced distance must be positive, got {d_reduced!r}")
    return d_reduced * length_unit_nm(scale) * 1e-3


def pressure_si(scale: ReferenceScale, f_over_f0: float) -> float:
    """Pressure in N/m^2 for a force given in f0 units."""
    return f_over_f0 * force_unit_si(scale)


def reduced_temperature(scale: ReferenceScale, kelvin: float) -> float:
    """Dimensionless temperature t = k_B T / (hbar w_P)."""
    if not kelvin > 0:
        raise ValueError(f"temperature must be positive, got {kelvin!r}")
    return BOLTZMANN_EV_PER_K * kelvin / scale.plasma_energy
