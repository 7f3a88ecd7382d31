"""Drude-Lorentz response functions on the imaginary frequency axis.

A single-resonance response evaluated at w = i*xi reads

    1 + omega_p^2 / (omega_t^2 + xi^2 + gamma*xi)

which is real and >= 1 for every xi >= 0. All frequencies are in units of
the reference plasma frequency. A Drude metal is the ``omega_t = 0`` case;
its static value is infinite and is represented by ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np


def _check_nonnegative(name, value):
    if not (isinstance(value, (int, float)) and value >= 0 and math.isfinite(value)):
        raise ValueError(f"{name} must be a finite non-negative number, got {value!r}")


@dataclass(frozen=True)
class OscillatorParams:
    """One Drude-Lorentz resonance: coupling ``omega_p``, resonance ``omega_t``, linewidth ``gamma``."""

    omega_p: float
    omega_t: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("omega_p", "omega_t", "gamma"):
            _check_nonnegative(name, getattr(self, name))

    @classmethod
    def from_relative(cls, P: float, Q: float, gamma_over_omega_t: float = 0.0) -> "OscillatorParams":
        """Build from P = omega_p/omega_t, Q = omega_t and gamma/omega_t."""
        for name, value in (("P", P), ("Q", Q), ("gamma_over_omega_t", gamma_over_omega_t)):
            _check_nonnegative(name, value)
        return cls(omega_p=P * Q, omega_t=Q, gamma=gamma_over_omega_t * Q)

    @property
    def is_drude(self) -> bool:
        return self.omega_t == 0 and self.omega_p > 0

    @property
    def P(self) -> float:
        if self.omega_t == 0:
            raise ValueError("relative strength P is undefined for omega_t = 0")
        return self.omega_p / self.omega_t

    @property
    def Q(self) -> float:
        return self.omega_t

    @property
    def gamma_over_omega_t(self) -> float:
        if self.omega_t == 0:
            raise ValueError("gamma/omega_t is undefined for omega_t = 0")
        return self.gamma / self.omega_t

    def __call__(self, xi):
        return response_at_imag_freq(self, xi)

    def static(self) -> float:
        return static_value(self)

    def characteristic_frequencies(self) -> tuple[float, ...]:
        """Frequencies where the response changes character; used as quadrature breakpoints."""
        if self.omega_p == 0:
            return ()
        freqs = {self.omega_t, self.gamma, math.hypot(self.omega_t, self.omega_p)}
        return tuple(sorted(f for f in freqs if f > 0))


@dataclass(frozen=True)
class ConstantResponse:
    """Frequency independent response; ``math.inf`` models an ideal conductor."""

    value: float

    def __post_init__(self):
        if not (isinstance(self.value, (int, float)) and self.value >= 1):
            raise ValueError(f"constant response must be >= 1, got {self.value!r}")

    def __call__(self, xi):
        xi = _check_xi(xi)
        return np.full_like(xi, float(self.value)) if isinstance(xi, np.ndarray) else float(self.value)

    def static(self) -> float:
        return float(self.value)

    @property
    def is_ideal(self) -> bool:
        return math.isinf(self.value)

    def characteristic_frequencies(self) -> tuple[float, ...]:
        return ()


Response = Union[OscillatorParams, ConstantResponse]

VACUUM_RESPONSE = ConstantResponse(1.0)


def _check_xi(xi):
    if isinstance(xi, np.ndarray):
        if np.any(xi < 0):
            raise ValueError("imaginary frequency xi must be >= 0")
        return xi
    if not xi >= 0:
        raise ValueError(f"imaginary frequency xi must be >= 0, got {xi!r}")
    return float(xi)


def response_at_imag_freq(params: OscillatorParams, xi):
    """Evaluate ``1 + omega_p^2/(omega_t^2 + xi^2 + gamma*xi)``; accepts scalars or arrays.

    Returns ``inf`` where the denominator vanishes, which only happens at
    ``xi = 0`` for an undamped-resonance-free (Drude or pure plasma) medium.
    """
    xi = _check_xi(xi)
    if params.omega_p == 0:
        return np.ones_like(xi) if isinstance(xi, np.ndarray) else 1.0
    denom = params.omega_t ** 2 + xi * (xi + params.gamma)
    with np.errstate(divide="ignore", over="ignore"):
        if isinstance(xi, np.ndarray):
            return 1.0 + params.omega_p ** 2 / denom
        return 1.0 + params.omega_p ** 2 / denom if denom > 0 else math.inf


def static_value(params: Response) -> float:
    """Zero-frequency limit 1 + (omega_p/omega_t)^2; ``inf`` for a Drude metal."""
    if isinstance(params, ConstantResponse):
        return float(params.value)
    if params.omega_p == 0:
        return 1.0
    if params.omega_t == 0:
        return math.inf
    return 1.0 + (params.omega_p / params.omega_t) ** 2


@dataclass(frozen=True)
class MaterialModel:
    """Electric and magnetic response of one homogeneous medium."""

    electric: Response = VACUUM_RESPONSE
    magnetic: Response = VACUUM_RESPONSE
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if static_value(self.electric) == math.inf and static_value(self.magnetic) == math.inf:
            raise ValueError("a medium cannot have both infinite permittivity and permeability")

    def eps(self, xi):
        return self.electric(xi)

    def mu(self, xi):
        return self.magnetic(xi)

    def static(self) -> tuple[float, float]:
        return static_value(self.electric), static_value(self.magnetic)

    def dual(self) -> "MaterialModel":
        """The medium with permittivity and permeability exchanged."""
        return MaterialModel(self.magnetic, self.electric,
                             name=f"dual({self.name})" if self.name else "")

    @property
    def is_vacuum(self) -> bool:
        return self.static() == (1.0, 1.0)

    def characteristic_frequencies(self) -> tuple[float, ...]:
        return tuple(sorted(set(self.electric.characteristic_frequencies())
                            | set(self.magnetic.characteristic_frequencies())))


VACUUM = MaterialModel(name="vacuum")

# Zero-temperature gold in units of its plasma frequency: residual damping
# 1e-6 of the 35 meV room temperature value at hbar*w_P = 9 eV.
DRUDE_GOLD_T0 = MaterialModel(OscillatorParams(1.0, 0.0, 3.9e-9), name="drude_gold_T0")

PERFECT_CONDUCTOR = MaterialModel(ConstantResponse(math.inf), name="perfect_conductor")


def drude_metal(gamma: float = 3.9e-9, omega_p: float = 1.0) -> MaterialModel:
    return MaterialModel(OscillatorParams(omega_p, 0.0, gamma), name="drude")


def magnetodielectric(P_e: float, Q_e: float, P_m: float, Q_m: float,
                      gamma_over_omega_t: float = 1e-2) -> MaterialModel:
    """Single-oscillator medium with both electric and magnetic resonances."""
    return MaterialModel(
        OscillatorParams.from_relative(P_e, Q_e, gamma_over_omega_t),
        OscillatorParams.from_relative(P_m, Q_m, gamma_over_omega_t),
        name=f"md(Pe={P_e:g},Qe={Q_e:g},Pm={P_m:g},Qm={Q_m:g})",
    )


def dielectric(eps: float, mu: float = 1.0) -> MaterialModel:
    return MaterialModel(ConstantResponse(eps), ConstantResponse(mu), name=f"const(eps={eps:g},mu={mu:g})")
