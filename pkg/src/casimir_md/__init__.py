"""Casimir force between planar dispersive magnetodielectric media."""

from .force import (CavityConfig, ConvergenceError, ForceResult, QuadratureSettings,
                    casimir_force, force_finite_T, force_T0_cartesian, force_T0_polar,
                    matsubara_term)
from .materials import (DRUDE_GOLD_T0, PERFECT_CONDUCTOR, VACUUM, ConstantResponse,
                        MaterialModel, OscillatorParams, magnetodielectric)
from .optics import Layer, LayerStack, Polarization, TransverseMode
from .units import ReferenceScale

__version__ = "0.1.0"

__all__ = [
    "CavityConfig", "ConvergenceError", "ForceResult", "QuadratureSettings", "casimir_force",
    "force_finite_T", "force_T0_cartesian", "force_T0_polar", "matsubara_term",
    "DRUDE_GOLD_T0", "PERFECT_CONDUCTOR", "VACUUM", "ConstantResponse", "MaterialModel",
    "OscillatorParams", "magnetodielectric", "Layer", "LayerStack", "Polarization",
    "TransverseMode", "ReferenceScale",
]
