"""Casimir force per unit area between two planar stacks.

Sign convention: positive values are attractive, negative values repulsive.
All inputs are in reduced units (see :mod:`casimir_md.units`); forces are
returned both in ``f0 = pi^2 hbar c k_P^4 / 240`` and relative to the ideal
perfect-mirror pressure ``f_id(d) = f0 / d^4``.

Three evaluation routes are provided:

* :func:`force_T0_polar` -- radial variable ``x = 2 kappa d`` and angle ``phi``
  with ``xi = kappa cos(phi)``, ``k = kappa sin(phi)``;
* :func:`force_T0_cartesian` -- direct integration over ``xi`` and ``k``,
  kept algorithmically separate as a cross-check of the polar route;
* :func:`force_finite_T` -- the Matsubara sum replacing the ``xi`` integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .materials import MaterialModel
from .optics import LayerStack, breakpoint_frequencies, stack_reflection_coefficients
from .polylog import li3
from .quadrature import integrate

# f/f_id = POLAR_PREFACTOR * int dx x^3 e^-x int dphi sin(phi) sum_q (...)
POLAR_PREFACTOR = 15.0 / (2.0 * math.pi ** 4)
# f/f0 = CARTESIAN_PREFACTOR * int dxi int dk k kappa sum_q (...), i.e. (240 / 2 pi^4) with hbar = c = 1
CARTESIAN_PREFACTOR = 120.0 / math.pi ** 4


class ConvergenceError(RuntimeError):
    """Raised when a quadrature or the Matsubara sum misses its tolerance.

    ``partial`` holds the best available :class:`ForceResult`.
    """

    def __init__(self, message: str, partial: "ForceResult | None" = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class CavityConfig:
    """Vacuum gap of width ``d`` (units of 1/k_P) between a left and a right stack."""

    left: LayerStack
    right: LayerStack
    d: float

    def __post_init__(self):
        for side in ("left", "right"):
            value = getattr(self, side)
            if isinstance(value, MaterialModel):
                object.__setattr__(self, side, LayerStack(value))
            elif not isinstance(value, LayerStack):
                raise TypeError(f"{side} must be a LayerStack or MaterialModel, got {type(value).__name__}")
        if not (isinstance(self.d, (int, float)) and math.isfinite(self.d) and self.d > 0):
            raise ValueError(f"gap width d must be positive, got {self.d!r}")

    def with_distance(self, d: float) -> "CavityConfig":
        return replace(self, d=d)

    def swapped(self) -> "CavityConfig":
        return CavityConfig(self.right, self.left, self.d)

    def dual(self) -> "CavityConfig":
        return CavityConfig(self.left.dual(), self.right.dual(), self.d)

    @property
    def is_trivial(self) -> bool:
        return self.left.is_vacuum or self.right.is_vacuum

    @property
    def half_spaces_only(self) -> bool:
        return not (self.left.layers or self.right.layers)


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-8
    x_max: float = 80.0
    max_subdivisions: int = 2000
    matsubara_term_tol: float = 1e-10
    max_matsubara_terms: int = 200_000

    def __post_init__(self):
        if not 0 < self.rel_tol < 1:
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol!r}")
        if not self.x_max > 10:
            raise ValueError(f"x_max must exceed 10, got {self.x_max!r}")
        if self.max_subdivisions < 1 or self.max_matsubara_terms < 1:
            raise ValueError("subdivision and term caps must be positive")
        if not 0 < self.matsubara_term_tol < 1:
            raise ValueError(f"matsubara_term_tol must lie in (0, 1), got {self.matsubara_term_tol!r}")

    @property
    def abs_floor(self) -> float:
        """Absolute tolerance in f/f_id units, so forces near zero still terminate."""
        return 1e-3 * self.rel_tol


DEFAULT_SETTINGS = QuadratureSettings()


@dataclass(frozen=True)
class ForceResult:
    """Force in f0 units and relative to f_id(d); ``est_error`` is in f0 units."""

    f_over_f0: float
    f_over_fid: float
    est_error: float
    evaluations: int
    d: float
    method: str = "polar"
    temperature: float = 0.0
    matsubara_terms: int = 0
    converged: bool = True

    @classmethod
    def from_fid(cls, f_over_fid: float, err_fid: float, d: float, **kw) -> "ForceResult":
        scale = d ** 4
        return cls(f_over_fid / scale, f_over_fid, err_fid / scale, d=d, **kw)

    @classmethod
    def from_f0(cls, f_over_f0: float, err_f0: float, d: float, **kw) -> "ForceResult":
        return cls(f_over_f0, f_over_f0 * d ** 4, err_f0, d=d, **kw)

    @property
    def interpretation(self) -> str:
        if self.f_over_f0 > 0:
            return "attractive"
        if self.f_over_f0 < 0:
            return "repulsive"
        return "zero"


def _round_trip_sum(rl_p, rl_s, rr_p, rr_s, exponent):
    """``a / (1 - a e^{-y})`` per polarization with ``a = r_- r_+`` and ``y = exponent``."""
    decay_m1 = np.expm1(-exponent)
    a_p = rl_p * rr_p
    a_s = rl_s * rr_s
    # 1 - a e^{-y} = (1 - a) - a (e^{-y} - 1): no cancellation for a -> 1, y -> 0
    return a_p / ((1.0 - a_p) - a_p * decay_m1), a_s / ((1.0 - a_s) - a_s * decay_m1)


def _zero(config: CavityConfig, method: str, temperature: float = 0.0) -> ForceResult:
    return ForceResult(0.0, 0.0, 0.0, 0, config.d, method=method, temperature=temperature)


# --------------------------------------------------------------------------
# polar route

def _polar_summand(x, phi, config: CavityConfig):
    kap0 = x / (2.0 * config.d)
    # cos(pi/2) is not exactly zero in floating point; the static branch needs xi == 0
    xi = np.where(phi >= 0.5 * math.pi, 0.0, kap0 * np.cos(phi))
    k = kap0 * np.sin(phi)
    rl_p, rl_s = stack_reflection_coefficients(config.left, xi, k)
    rr_p, rr_s = stack_reflection_coefficients(config.right, xi, k)
    tm, te = _round_trip_sum(rl_p, rl_s, rr_p, rr_s, x)
    return tm + te


def integrand_polar(x, phi, config: CavityConfig):
    """``x^3 e^-x sin(phi) sum_q r_- r_+ / (1 - r_- r_+ e^-x)``, broadcasting over ``x`` and ``phi``."""
    x = np.asarray(x, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any(x <= 0):
        raise ValueError("radial variable x must be positive")
    x, phi = np.broadcast_arrays(x, phi)
    return x ** 3 * np.exp(-x) * np.sin(phi) * _polar_summand(x, phi, config)


def _polar_angle_integral(x: float, config, freqs, settings):
    kap0 = x / (2.0 * config.d)
    cuts = [math.acos(w / kap0) for w in freqs if w < kap0]
    # accuracy is only needed relative to the radial weight x^3 e^-x applied afterwards
    weight = x ** 3 * math.exp(-x)
    abs_tol = settings.abs_floor / weight if weight > 0 else math.inf
    return integrate(
        lambda phi: np.sin(phi) * _polar_summand(np.full_like(phi, x), phi, config),
        0.0, 0.5 * math.pi, breakpoints=cuts,
        rel_tol=0.1 * settings.rel_tol, abs_tol=abs_tol,
        max_subdivisions=settings.max_subdivisions,
    )


def force_T0_polar(config: CavityConfig, settings: QuadratureSettings = DEFAULT_SETTINGS) -> ForceResult:
    """Zero-temperature force from the polar form of the imaginary-axis integral."""
    if config.is_trivial:
        return _zero(config, "polar")
    freqs = breakpoint_frequencies((config.left, config.right))
    stats = {"evals": 0, "inner_err": 0.0, "inner_failed": 0}

    def radial(xs):
        out = np.empty_like(xs)
        for i, x in enumerate(xs):
            res = _polar_angle_integral(float(x), config, freqs, settings)
            weight = x ** 3 * math.exp(-x)
            out[i] = weight * res.value
            stats["evals"] += res.evaluations
            stats["inner_err"] = max(stats["inner_err"], weight * res.error)
            stats["inner_failed"] += not res.converged
        return out

    x_cuts = [2.0 * config.d * w for w in freqs]
    outer = integrate(radial, 0.0, settings.x_max, breakpoints=x_cuts,
                      rel_tol=settings.rel_tol, abs_tol=settings.abs_floor / POLAR_PREFACTOR,
                      max_subdivisions=settings.max_subdivisions)
    err = POLAR_PREFACTOR * (outer.error + settings.x_max * stats["inner_err"])
    converged = outer.converged and not stats["inner_failed"]
    result = ForceResult.from_fid(POLAR_PREFACTOR * outer.value, err, config.d,
                                  evaluations=stats["evals"], method="polar", converged=converged)
    if not converged:
        raise ConvergenceError(
            f"polar quadrature did not converge (outer={outer.converged}, "
            f"{stats['inner_failed']} inner failures)", result)
    return result


# --------------------------------------------------------------------------
# cartesian route

def _cartesian_k_integrand(xi: float, k, config: CavityConfig):
    xi_arr = np.full_like(k, xi)
    kap = np.sqrt(xi * xi + k * k)
    rl_p, rl_s = stack_reflection_coefficients(config.left, xi_arr, k)
    rr_p, rr_s = stack_reflection_coefficients(config.right, xi_arr, k)
    y = 2.0 * kap * config.d
    tm, te = _round_trip_sum(rl_p, rl_s, rr_p, rr_s, y)
    # (1 - D)/D = r r e^{-2 kappa d} / (1 - r r e^{-2 kappa d})
    return k * kap * np.exp(-y) * (tm + te)


def force_T0_cartesian(config: CavityConfig, settings: QuadratureSettings = DEFAULT_SETTINGS) -> ForceResult:
    """Zero-temperature force integrating directly over ``xi`` and ``k``.

    ``f/f0 = (120/pi^4) int_0^K dxi int_0^sqrt(K^2 - xi^2) dk k kappa sum_q (1-D_q)/D_q``
    with ``K = x_max / (2 d)``, i.e. the same ``kappa d <= x_max/2`` truncation
    as the polar route.
    """
    if config.is_trivial:
        return _zero(config, "cartesian")
    d = config.d
    K = settings.x_max / (2.0 * d)
    freqs = breakpoint_frequencies((config.left, config.right))
    # tolerances expressed in f0 units
    abs_outer = settings.abs_floor / (CARTESIAN_PREFACTOR * d ** 4)
    abs_inner = abs_outer * d
    stats = {"evals": 0, "inner_err": 0.0, "inner_failed": 0}

    def over_xi(xis):
        out = np.empty_like(xis)
        for i, xi in enumerate(xis):
            k_top = math.sqrt(max(K * K - xi * xi, 0.0))
            res = integrate(lambda k: _cartesian_k_integrand(float(xi), k, config), 0.0, k_top,
                            breakpoints=(1.0 / d,), rel_tol=0.1 * settings.rel_tol,
                            abs_tol=abs_inner, max_subdivisions=settings.max_subdivisions)
            out[i] = res.value
            stats["evals"] += res.evaluations
            stats["inner_err"] = max(stats["inner_err"], res.error)
            stats["inner_failed"] += not res.converged
        return out

    outer = integrate(over_xi, 0.0, K, breakpoints=freqs, rel_tol=settings.rel_tol,
                      abs_tol=abs_outer, max_subdivisions=settings.max_subdivisions)
    err = CARTESIAN_PREFACTOR * (outer.error + K * stats["inner_err"])
    converged = outer.converged and not stats["inner_failed"]
    result = ForceResult.from_f0(CARTESIAN_PREFACTOR * outer.value, err, d,
                                 evaluations=stats["evals"], method="cartesian", converged=converged)
    if not converged:
        raise ConvergenceError("cartesian quadrature did not converge", result)
    return result


# --------------------------------------------------------------------------
# finite temperature

@dataclass(frozen=True)
class MatsubaraTerm:
    """Contribution of one Matsubara frequency to f/f0, split by polarization.

    Includes the ``(120/pi^4) * 2 pi t`` prefactor and the half weight of
    ``m = 0``, so the force is the plain sum of ``total`` over ``m``.
    """

    m: int
    xi: float
    tm: float
    te: float
    error: float
    evaluations: int = 0

    @property
    def total(self) -> float:
        return self.tm + self.te


def _kappa_integrand(xi: float, kap, config: CavityConfig, polarization: int):
    # k dk = kappa dkappa at fixed xi
    k = np.sqrt(np.maximum(kap * kap - xi * xi, 0.0))
    xi_arr = np.full_like(kap, xi)
    rl = stack_reflection_coefficients(config.left, xi_arr, k)
    rr = stack_reflection_coefficients(config.right, xi_arr, k)
    y = 2.0 * kap * config.d
    a = rl[polarization] * rr[polarization]
    return kap * kap * a * np.exp(-y) / ((1.0 - a) - a * np.expm1(-y))


def _static_products(config: CavityConfig) -> tuple[float, float]:
    zero, one = np.zeros(1), np.ones(1)
    rl_p, rl_s = stack_reflection_coefficients(config.left, zero, one)
    rr_p, rr_s = stack_reflection_coefficients(config.right, zero, one)
    return float(rl_p[0] * rr_p[0]), float(rl_s[0] * rr_s[0])


def matsubara_term(config: CavityConfig, m: int, t: float,
                   settings: QuadratureSettings = DEFAULT_SETTINGS) -> MatsubaraTerm:
    """The ``m``-th Matsubara contribution at reduced temperature ``t = k_B T / hbar w_P``."""
    if not t > 0:
        raise ValueError(f"reduced temperature must be positive, got {t!r}")
    if m < 0 or int(m) != m:
        raise ValueError(f"Matsubara index must be a non-negative integer, got {m!r}")
    m = int(m)
    xi = 2.0 * math.pi * m * t
    d = config.d
    weight = CARTESIAN_PREFACTOR * 2.0 * math.pi * t * (0.5 if m == 0 else 1.0)
    if config.is_trivial:
        return MatsubaraTerm(m, xi, 0.0, 0.0, 0.0)

    if m == 0 and config.half_spaces_only:
        # static coefficients do not depend on k: int k^2 R e^{-2kd}/(1 - R e^{-2kd}) dk = Li3(R)/(4 d^3)
        prod_p, prod_s = _static_products(config)
        scale = weight / (4.0 * d ** 3)
        tm = scale * li3(prod_p)
        te = scale * li3(prod_s) if prod_s != 0.0 else 0.0
        return MatsubaraTerm(0, 0.0, tm, te, 1e-15 * (abs(tm) + abs(te)))

    span = settings.x_max / (2.0 * d)
    # spread the absolute floor (f/f_id units) over roughly 1/(2 pi t d) significant terms
    abs_tol = settings.abs_floor * 2.0 * math.pi * t * d / (weight * d ** 4)
    values, errors, evals = [], 0.0, 0
    for pol in (0, 1):
        res = integrate(lambda kap: _kappa_integrand(xi, kap, config, pol), xi, xi + span,
                        breakpoints=(xi + 1.0 / d,), rel_tol=0.1 * settings.rel_tol,
                        abs_tol=abs_tol, max_subdivisions=settings.max_subdivisions)
        if not res.converged:
            raise ConvergenceError(f"Matsubara term m={m} did not converge")
        values.append(weight * res.value)
        errors += weight * res.error
        evals += res.evaluations
    return MatsubaraTerm(m, xi, values[0], values[1], errors, evals)


def force_finite_T(config: CavityConfig, t: float,
                   settings: QuadratureSettings = DEFAULT_SETTINGS) -> ForceResult:
    """Force at reduced temperature ``t`` from the Matsubara sum.

    Terms are added in ascending ``m`` until two consecutive terms fall below
    ``matsubara_term_tol`` times the running sum of magnitudes.
    """
    if not t > 0:
        raise ValueError(f"reduced temperature must be positive, got {t!r}")
    if config.is_trivial:
        return _zero(config, "matsubara", t)
    total = 0.0
    magnitude = 0.0
    err = 0.0
    evals = 0
    quiet = 0
    for m in range(settings.max_matsubara_terms):
        term = matsubara_term(config, m, t, settings)
        total += term.total
        magnitude += abs(term.tm) + abs(term.te)
        err += term.error
        evals += term.evaluations
        small = abs(term.total) <= settings.matsubara_term_tol * magnitude
        quiet = quiet + 1 if small else 0
        if quiet >= 2:
            return ForceResult.from_f0(total, err, config.d, evaluations=evals, method="matsubara",
                                       temperature=t, matsubara_terms=m + 1)
    partial = ForceResult.from_f0(total, err, config.d, evaluations=evals, method="matsubara",
                                  temperature=t, matsubara_terms=settings.max_matsubara_terms,
                                  converged=False)
    raise ConvergenceError(
        f"Matsubara sum not converged after {settings.max_matsubara_terms} terms", partial)


def casimir_force(config: CavityConfig, t: float = 0.0,
                  settings: QuadratureSettings = DEFAULT_SETTINGS) -> ForceResult:
    """Force at reduced temperature ``t``; ``t == 0`` selects the polar T = 0 integral."""
    if t == 0:
        return force_T0_polar(config, settings)
    return force_finite_T(config, t, settings)
