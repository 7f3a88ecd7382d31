"""Parameter sweeps, distance scans, crossover and extremum searches.

Parameters are addressed by dotted paths into a :class:`CavityConfig`:

    d
    right.electric.P            relative strength omega_p/omega_t
    right.magnetic.Q            resonance omega_t (keeps P and gamma/omega_t)
    left.electric.gamma         any absolute oscillator field
    right.electric.value        a constant response
    right.layers.0.thickness
    right.layers.0.magnetic.P

Relative updates keep the other relative parameters fixed, so sweeping
``Q`` scales the damping with the resonance frequency.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy import optimize

from .force import (DEFAULT_SETTINGS, CavityConfig, ConvergenceError, ForceResult,
                    QuadratureSettings, casimir_force)
from .materials import ConstantResponse, MaterialModel, OscillatorParams
from .optics import Layer, LayerStack

THREADS_ENV = "CASIMIR_MD_THREADS"


# --------------------------------------------------------------------------
# parameter paths

def _update_response(resp, name: str, value: float):
    if isinstance(resp, ConstantResponse):
        if name != "value":
            raise KeyError(f"constant response has only 'value', not {name!r}")
        return ConstantResponse(value)
    if name in ("omega_p", "omega_t", "gamma"):
        return replace(resp, **{name: value})
    if name == "P":
        return OscillatorParams.from_relative(value, resp.Q, resp.gamma_over_omega_t)
    if name == "Q":
        return OscillatorParams.from_relative(resp.P, value, resp.gamma_over_omega_t)
    if name == "gamma_over_omega_t":
        return OscillatorParams.from_relative(resp.P, resp.Q, value)
    raise KeyError(f"unknown oscillator parameter {name!r}")


def _update_material(material: MaterialModel, parts: Sequence[str], value: float) -> MaterialModel:
    if len(parts) != 2 or parts[0] not in ("electric", "magnetic"):
        raise KeyError(f"material path must be '<electric|magnetic>.<param>', got {'.'.join(parts)!r}")
    kind, name = parts
    return replace(material, **{kind: _update_response(getattr(material, kind), name, value)})


def set_parameter(config: CavityConfig, path: str, value: float) -> CavityConfig:
    """Return a copy of ``config`` with the parameter at ``path`` set to ``value``."""
    parts = path.split(".")
    if parts == ["d"]:
        return config.with_distance(value)
    side = parts[0]
    if side not in ("left", "right"):
        raise KeyError(f"parameter path must start with 'd', 'left' or 'right', got {path!r}")
    stack: LayerStack = getattr(config, side)
    rest = parts[1:]
    if rest[:1] == ["layers"]:
        if len(rest) < 3:
            raise KeyError(f"incomplete layer path {path!r}")
        idx = int(rest[1])
        layers = list(stack.layers)
        layer = layers[idx]
        if rest[2:] == ["thickness"]:
            layers[idx] = Layer(layer.material, value)
        else:
            layers[idx] = Layer(_update_material(layer.material, rest[2:], value), layer.thickness)
        stack = LayerStack(stack.terminator, tuple(layers))
    else:
        stack = LayerStack(_update_material(stack.terminator, rest, value), stack.layers)
    return replace(config, **{side: stack})


def get_parameter(config: CavityConfig, path: str) -> float:
    parts = path.split(".")
    if parts == ["d"]:
        return config.d
    stack = getattr(config, parts[0])
    rest = parts[1:]
    if rest[:1] == ["layers"]:
        layer = stack.layers[int(rest[1])]
        if rest[2:] == ["thickness"]:
            return layer.thickness
        material, rest = layer.material, rest[2:]
    else:
        material = stack.terminator
    return float(getattr(getattr(material, rest[0]), rest[1]))


# --------------------------------------------------------------------------
# results

@dataclass(frozen=True)
class ScanPoint:
    coords: tuple[float, ...]
    result: ForceResult | None
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class ScanResult:
    """Force values on a grid, one :class:`ScanPoint` per grid point in row-major order."""

    axes: tuple[str, ...]
    grids: tuple[tuple[float, ...], ...]
    points: tuple[ScanPoint, ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.grids)

    def _column(self, attr: str) -> np.ndarray:
        vals = [getattr(p.result, attr) if p.result is not None else math.nan for p in self.points]
        return np.array(vals, dtype=float).reshape(self.shape)

    @property
    def f_over_fid(self) -> np.ndarray:
        return self._column("f_over_fid")

    @property
    def f_over_f0(self) -> np.ndarray:
        return self._column("f_over_f0")

    @property
    def failures(self) -> list[ScanPoint]:
        return [p for p in self.points if not p.ok]


@dataclass(frozen=True)
class SweepAxis:
    target: str
    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValueError(f"axis {self.target!r} has an empty grid")
        steps = np.diff(values)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError(f"axis {self.target!r} grid must be strictly monotone")


@dataclass(frozen=True)
class SweepSpec:
    axis1: SweepAxis
    axis2: SweepAxis
    base_config: CavityConfig
    temperature: float = 0.0
    settings: QuadratureSettings = field(default=DEFAULT_SETTINGS)

    def configs(self) -> list[CavityConfig]:
        out = []
        for a in self.axis1.values:
            cfg = set_parameter(self.base_config, self.axis1.target, a)
            for b in self.axis2.values:
                out.append(set_parameter(cfg, self.axis2.target, b))
        return out

    def transposed(self) -> "SweepSpec":
        return replace(self, axis1=self.axis2, axis2=self.axis1)


# --------------------------------------------------------------------------
# evaluation

def worker_count(workers: int | None = None) -> int:
    """Resolve a worker count; ``None`` reads CASIMIR_MD_THREADS (0 = one per CPU)."""
    if workers is None:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            workers = int(raw)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if workers < 0:
        raise ValueError("worker count must be >= 0")
    return workers or (os.cpu_count() or 1)


def _evaluate(job) -> ScanPoint:
    coords, config, t, settings = job
    try:
        return ScanPoint(coords, casimir_force(config, t, settings))
    except ConvergenceError as exc:
        return ScanPoint(coords, exc.partial, status=f"unconverged: {exc}")
    except ValueError as exc:
        return ScanPoint(coords, None, status=f"error: {exc}")


def _run(jobs: list, workers: int | None) -> tuple[ScanPoint, ...]:
    n = worker_count(workers)
    if n == 1 or len(jobs) < 2:
        return tuple(_evaluate(j) for j in jobs)
    with ProcessPoolExecutor(max_workers=min(n, len(jobs))) as pool:
        return tuple(pool.map(_evaluate, jobs))


def sweep_2d(spec: SweepSpec, workers: int | None = 1) -> ScanResult:
    """Evaluate the force on the product grid ``axis1 x axis2`` (row-major by axis1).

    Points that fail keep their place in the grid with a non-"ok" status.
    """
    coords = [(a, b) for a in spec.axis1.values for b in spec.axis2.values]
    jobs = [(c, cfg, spec.temperature, spec.settings) for c, cfg in zip(coords, spec.configs())]
    return ScanResult((spec.axis1.target, spec.axis2.target),
                      (spec.axis1.values, spec.axis2.values), _run(jobs, workers))


def distance_scan(config: CavityConfig, d_grid: Sequence[float], t: float = 0.0,
                  settings: QuadratureSettings = DEFAULT_SETTINGS,
                  workers: int | None = 1) -> ScanResult:
    """Force versus gap width for the materials of ``config``."""
    axis = SweepAxis("d", tuple(d_grid))
    if axis.values[0] <= 0:
        raise ValueError("distances must be positive")
    jobs = [((d,), config.with_distance(d), t, settings) for d in axis.values]
    return ScanResult(("d",), (axis.values,), _run(jobs, workers))


def coarse_grid(d_lo: float, d_hi: float, points: int = 64) -> np.ndarray:
    """Pre-scan grid: logarithmic when the bracket spans more than a factor 20."""
    if d_hi / d_lo > 20:
        return np.geomspace(d_lo, d_hi, points)
    return np.linspace(d_lo, d_hi, points)


def _check_bracket(bracket):
    d_lo, d_hi = map(float, bracket)
    if not 0 < d_lo < d_hi:
        raise ValueError(f"bracket must satisfy 0 < d_lo < d_hi, got {bracket!r}")
    return d_lo, d_hi


def _strict(point: ScanPoint) -> ForceResult:
    if point.result is None or not point.ok:
        raise ConvergenceError(f"force evaluation failed at d={point.coords[0]}: {point.status}",
                               point.result)
    return point.result


@dataclass(frozen=True)
class CrossoverResult:
    """Outcome of a crossover search; ``distance`` is None when no sign change exists."""

    distance: float | None
    direction: str = ""
    evaluations: int = 0
    scan: ScanResult | None = None


def crossover_distance(config: CavityConfig, bracket: tuple[float, float], tol_d: float = 0.5,
                       t: float = 0.0, settings: QuadratureSettings = DEFAULT_SETTINGS,
                       workers: int | None = 1) -> CrossoverResult:
    """Smallest gap width in ``bracket`` where the force changes sign, refined by bisection."""
    d_lo, d_hi = _check_bracket(bracket)
    calls = 0

    def f(d):
        nonlocal calls
        calls += 1
        return _strict(_evaluate(((d,), config.with_distance(d), t, settings))).f_over_fid

    f_lo, f_hi = f(d_lo), f(d_hi)
    scan = None
    if f_lo * f_hi < 0:
        a, b, fa = d_lo, d_hi, f_lo
    else:
        scan = distance_scan(config, coarse_grid(d_lo, d_hi), t, settings, workers)
        calls += len(scan.points)
        vals = np.array([_strict(p).f_over_fid for p in scan.points])
        change = np.nonzero(vals[:-1] * vals[1:] < 0)[0]
        if change.size == 0:
            exact = np.nonzero(vals == 0)[0]
            if exact.size:
                return CrossoverResult(float(scan.grids[0][exact[0]]), "zero", calls, scan)
            return CrossoverResult(None, "", calls, scan)
        i = int(change[0])
        a, b, fa = scan.grids[0][i], scan.grids[0][i + 1], vals[i]
    root = optimize.bisect(f, a, b, xtol=tol_d)
    direction = "attractive->repulsive" if fa > 0 else "repulsive->attractive"
    return CrossoverResult(float(root), direction, calls, scan)


@dataclass(frozen=True)
class Extremum:
    d_star: float
    result: ForceResult
    evaluations: int
    scan: ScanResult

    @property
    def f_star(self) -> float:
        return self.result.f_over_f0


def extremal_repulsion(config: CavityConfig, bracket: tuple[float, float], tol_d: float = 0.5,
                       t: float = 0.0, settings: QuadratureSettings = DEFAULT_SETTINGS,
                       workers: int | None = 1) -> Extremum | None:
    """Gap width of maximal repulsion (most negative f in f0 units) inside ``bracket``.

    A 64-point coarse scan locates the minimum, golden-section search refines
    it. Returns None when the force is nowhere negative on the scan.
    """
    d_lo, d_hi = _check_bracket(bracket)
    scan = distance_scan(config, coarse_grid(d_lo, d_hi), t, settings, workers)
    vals = np.array([_strict(p).f_over_f0 for p in scan.points])
    grid = scan.grids[0]
    i = int(np.argmin(vals))
    if vals[i] >= 0:
        return None
    calls = len(grid)
    if i == 0 or i == len(grid) - 1:
        return Extremum(float(grid[i]), scan.points[i].result, calls, scan)

    def f(d):
        nonlocal calls
        calls += 1
        return _strict(_evaluate(((d,), config.with_distance(d), t, settings))).f_over_f0

    best = optimize.minimize_scalar(f, bracket=(grid[i - 1], grid[i], grid[i + 1]),
                                    method="golden", options={"xtol": tol_d / (2 * grid[i])})
    d_star = float(best.x)
    result = _strict(_evaluate(((d_star,), config.with_distance(d_star), t, settings)))
    return Extremum(d_star, result, calls + 1, scan)
