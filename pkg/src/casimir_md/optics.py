"""TE/TM reflection coefficients of half-spaces and planar stacks at imaginary frequency.

On the imaginary axis every wave vector and every reflection coefficient of
a passive medium is real, so nothing here is complex. Coefficients are built
from the surface admittances ``Y_p = eps/kappa`` and ``Y_s = mu/kappa``:

    r_ij = (Y_j - Y_i) / (Y_j + Y_i)

which reproduces ``(eps_j kappa_i - eps_i kappa_j)/(eps_j kappa_i + eps_i kappa_j)``
and lets infinite permittivity enter as ``Y_p = inf`` instead of as a huge float.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .materials import ConstantResponse, MaterialModel, VACUUM


class Polarization(enum.Enum):
    TM = "p"
    TE = "s"


@dataclass(frozen=True)
class TransverseMode:
    xi: float
    k: float
    polarization: Polarization = Polarization.TM

    def __post_init__(self):
        if not (self.xi >= 0 and self.k >= 0):
            raise ValueError(f"xi and k must be non-negative, got ({self.xi}, {self.k})")
        if self.xi == 0 and self.k == 0:
            raise ValueError("the mode xi = k = 0 is degenerate")


@dataclass(frozen=True)
class Layer:
    material: MaterialModel
    thickness: float

    def __post_init__(self):
        if not (self.thickness > 0):
            raise ValueError(f"layer thickness must be positive, got {self.thickness!r}")


@dataclass(frozen=True)
class LayerStack:
    """Semi-infinite ``terminator`` covered by ``layers``, listed from the gap outward."""

    terminator: MaterialModel
    layers: tuple[Layer, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    @classmethod
    def half_space(cls, material: MaterialModel) -> "LayerStack":
        return cls(material)

    @property
    def materials(self) -> tuple[MaterialModel, ...]:
        return tuple(layer.material for layer in self.layers) + (self.terminator,)

    @property
    def is_vacuum(self) -> bool:
        return all(m.is_vacuum for m in self.materials)

    def dual(self) -> "LayerStack":
        return LayerStack(self.terminator.dual(),
                          tuple(Layer(l.material.dual(), l.thickness) for l in self.layers))

    def characteristic_frequencies(self) -> tuple[float, ...]:
        freqs: set[float] = set()
        for m in self.materials:
            freqs.update(m.characteristic_frequencies())
        return tuple(sorted(freqs))


def _is_ideal(response) -> bool:
    return isinstance(response, ConstantResponse) and response.is_ideal


def _admittances(eps, mu, xi, k, ideal_e=False, ideal_m=False):
    """Return ``(kappa, Y_p, Y_s)`` for one medium, broadcasting all inputs.

    An infinite response makes its own admittance infinite and the other one
    zero (perfect electric or magnetic mirror). The exception is the static
    Drude limit: at ``xi = 0`` a dispersive medium with ``eps(0) = inf`` keeps
    its finite TE admittance, which gives ``r_s(0, k) = (mu(0)-1)/(mu(0)+1)``.
    Set ``ideal_e``/``ideal_m`` for nondispersive ideal conductors, which act
    as mirrors at every frequency including zero.
    """
    eps, mu, xi, k = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (eps, mu, xi, k)))
    e_inf = np.isinf(eps)
    m_inf = np.isinf(mu)
    finite = ~(e_inf | m_inf)
    static = xi == 0
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        kap = np.where(static, k, np.hypot(np.sqrt(np.where(finite, eps * mu, 0.0)) * xi, k))
        yp = eps / kap
        ys = mu / kap
        mirror_e = e_inf & (~static | ideal_e)
        mirror_m = m_inf & (~static | ideal_m)
        yp = np.where(e_inf, np.inf, np.where(mirror_m, 0.0, yp))
        ys = np.where(m_inf, np.inf, np.where(mirror_e, 0.0, ys))
        kap = np.where(mirror_e | mirror_m, np.inf, kap)
    return kap, yp, ys


def _fresnel(y_i, y_j):
    with np.errstate(invalid="ignore"):
        r = (y_j - y_i) / (y_j + y_i)
    inf_i, inf_j = np.isinf(y_i), np.isinf(y_j)
    r = np.where(inf_j & ~inf_i, 1.0, r)
    r = np.where(inf_i & ~inf_j, -1.0, r)
    # two identical perfect mirrors (inf/inf or 0/0): no interface
    return np.where(np.isnan(r), 0.0, r)


def _material_admittances(material: MaterialModel, xi, k):
    return _admittances(material.eps(xi), material.mu(xi), xi, k,
                        _is_ideal(material.electric), _is_ideal(material.magnetic))


def _check_passive(*values):
    for v in values:
        if not v >= 1:
            raise ValueError(f"permittivity and permeability must be >= 1 on the imaginary axis, got {v!r}")


def kappa(eps: float, mu: float, xi: float, k: float) -> float:
    """Decay constant ``sqrt(eps*mu*xi^2 + k^2)`` of a medium (c = 1)."""
    if not (xi >= 0 and k >= 0) or (xi == 0 and k == 0):
        raise ValueError(f"invalid mode (xi={xi!r}, k={k!r})")
    _check_passive(eps, mu)
    if xi > 0 and (math.isinf(eps) or math.isinf(mu)):
        raise ValueError("kappa is infinite for an infinite response at xi > 0; use the mirror limit")
    if xi == 0:
        return float(k)
    return math.hypot(math.sqrt(eps * mu) * xi, k)


def interface_reflection(mode: TransverseMode, eps_i: float, mu_i: float,
                         eps_j: float, mu_j: float) -> float:
    """Reflection coefficient for a wave in medium ``i`` hitting medium ``j``."""
    _check_passive(eps_i, mu_i, eps_j, mu_j)
    _, yp_i, ys_i = _admittances(eps_i, mu_i, mode.xi, mode.k)
    _, yp_j, ys_j = _admittances(eps_j, mu_j, mode.xi, mode.k)
    if mode.polarization is Polarization.TM:
        return float(_fresnel(yp_i, yp_j))
    return float(_fresnel(ys_i, ys_j))


def half_space_reflection(mode: TransverseMode, eps: float, mu: float) -> float:
    """Vacuum/medium reflection coefficient.

    With ``eps = inf`` and ``xi > 0`` this is the perfect conductor
    (``r_p = 1``, ``r_s = -1``); at ``xi = 0`` an infinite ``eps`` is read as
    the static Drude limit.
    """
    return interface_reflection(mode, 1.0, 1.0, eps, mu)


def static_reflection(polarization: Polarization, material: MaterialModel) -> float:
    """The ``xi -> 0`` vacuum/medium coefficient; independent of ``k``.

    ``r_p = (eps(0)-1)/(eps(0)+1)`` (1 for a Drude metal) and
    ``r_s = (mu(0)-1)/(mu(0)+1)`` (0 for a nonmagnetic Drude metal). A
    nondispersive ideal conductor stays a mirror, ``r_s = -1``.
    """
    rp, rs = stack_reflection_coefficients(LayerStack(material), np.zeros(1), np.ones(1))
    return float(rp[0] if polarization is Polarization.TM else rs[0])


def stack_reflection_coefficients(stack: LayerStack, xi, k) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``(r_p, r_s)`` seen from the vacuum gap for arrays ``xi``, ``k``.

    Points with ``xi == 0`` use static material values (the Drude limits are
    handled algebraically); ``xi = k = 0`` is not checked here.
    """
    xi, k = np.broadcast_arrays(np.asarray(xi, dtype=float), np.asarray(k, dtype=float))
    media = (VACUUM,) + stack.materials
    adm = [_material_admittances(m, xi, k) for m in media]
    rp = _fresnel(adm[-2][1], adm[-1][1])
    rs = _fresnel(adm[-2][2], adm[-1][2])
    for j in range(len(stack.layers), 0, -1):
        kap_j = adm[j][0]
        with np.errstate(over="ignore"):
            phase = np.exp(-2.0 * kap_j * stack.layers[j - 1].thickness)
        fp = _fresnel(adm[j - 1][1], adm[j][1])
        fs = _fresnel(adm[j - 1][2], adm[j][2])
        with np.errstate(invalid="ignore"):
            rp = (fp + rp * phase) / (1.0 + fp * rp * phase)
            rs = (fs + rs * phase) / (1.0 + fs * rs * phase)
        # a perfectly reflecting interface transmits nothing, whatever lies behind it
        rp = np.where(np.abs(fp) == 1.0, fp, rp)
        rs = np.where(np.abs(fs) == 1.0, fs, rs)
    return rp, rs


def stack_reflection(stack: LayerStack, mode: TransverseMode) -> float:
    """Single-mode reflection coefficient of a stack."""
    rp, rs = stack_reflection_coefficients(stack, np.array([mode.xi]), np.array([mode.k]))
    return float((rp if mode.polarization is Polarization.TM else rs)[0])


def breakpoint_frequencies(stacks: Iterable[LayerStack]) -> tuple[float, ...]:
    freqs: set[float] = set()
    for s in stacks:
        freqs.update(s.characteristic_frequencies())
    return tuple(sorted(freqs))
