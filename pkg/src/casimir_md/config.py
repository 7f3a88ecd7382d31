"""Run configuration documents (YAML) and their validation.

A document describes the two stacks bounding the vacuum gap, the unit scale,
an optional temperature and command-specific blocks::

    scale: {plasma_energy_ev: 9.0}
    temperature: zero            # or kelvin, e.g. 300
    d: 850                       # gap width in units of 1/k_P
    left:  {material: drude_gold_T0}
    right:
      electric: {P: 0.5, Q: 0.1, gamma_over_omega_t: 1.0e-2}
      magnetic: {P: 3, Q: 1.0e-4, gamma_over_omega_t: 1.0e-2}
      layers:                    # optional, listed from the gap outward
        - {thickness: 0.3, electric: {constant: 4}}

A response block is one of ``{omega_p, omega_t, gamma}`` (absolute, units of
w_P), ``{P, Q, gamma_over_omega_t}`` (relative) or ``{constant}`` (``inf``
allowed). ``material`` may name a built-in: vacuum, drude_gold_T0,
perfect_conductor.
"""

from __future__ import annotations

import math
from typing import Annotated, Any, Literal, Optional, Union

import numpy as np
import yaml
from pydantic import (BaseModel, ConfigDict, Discriminator, Field, Tag, ValidationError,
                      field_validator, model_validator)

from .analysis import SweepAxis, SweepSpec, set_parameter
from .force import CavityConfig, QuadratureSettings
from .materials import (DRUDE_GOLD_T0, PERFECT_CONDUCTOR, VACUUM, ConstantResponse,
                        MaterialModel, OscillatorParams)
from .optics import Layer, LayerStack
from .units import ReferenceScale, reduced_temperature

BUILTIN_MATERIALS = {
    "vacuum": VACUUM,
    "drude_gold_T0": DRUDE_GOLD_T0,
    "perfect_conductor": PERFECT_CONDUCTOR,
}

NonNeg = Annotated[float, Field(ge=0, allow_inf_nan=False)]
Positive = Annotated[float, Field(gt=0, allow_inf_nan=False)]


class ConfigError(ValueError):
    """Invalid run configuration; the message lists offending field paths."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class AbsoluteOscillator(_Strict):
    omega_p: NonNeg
    omega_t: NonNeg = 0.0
    gamma: NonNeg = 0.0

    def build(self):
        return OscillatorParams(self.omega_p, self.omega_t, self.gamma)


class RelativeOscillator(_Strict):
    P: NonNeg
    Q: NonNeg
    gamma_over_omega_t: NonNeg = 0.0

    def build(self):
        return OscillatorParams.from_relative(self.P, self.Q, self.gamma_over_omega_t)


class ConstantBlock(_Strict):
    constant: float = Field(ge=1)

    def build(self):
        return ConstantResponse(self.constant)


def _response_kind(value: Any) -> str | None:
    if isinstance(value, dict):
        if "constant" in value:
            return "constant"
        if {"P", "Q"} & value.keys():
            return "relative"
        return "absolute"
    if isinstance(value, BaseModel):
        return {AbsoluteOscillator: "absolute", RelativeOscillator: "relative",
                ConstantBlock: "constant"}.get(type(value))
    return None


ResponseBlock = Annotated[
    Union[Annotated[AbsoluteOscillator, Tag("absolute")],
          Annotated[RelativeOscillator, Tag("relative")],
          Annotated[ConstantBlock, Tag("constant")]],
    Discriminator(_response_kind),
]


class MaterialBlock(_Strict):
    material: Optional[str] = None
    electric: Optional[ResponseBlock] = None
    magnetic: Optional[ResponseBlock] = None

    @model_validator(mode="after")
    def _one_form(self):
        if self.material is not None:
            if self.electric is not None or self.magnetic is not None:
                raise ValueError("give either 'material' or 'electric'/'magnetic', not both")
            if self.material not in BUILTIN_MATERIALS:
                raise ValueError(f"unknown material {self.material!r}; "
                                 f"built-ins are {sorted(BUILTIN_MATERIALS)}")
        elif self.electric is None and self.magnetic is None:
            raise ValueError("a material needs 'material' or at least one of 'electric'/'magnetic'")
        return self

    def build_material(self) -> MaterialModel:
        if self.material is not None:
            return BUILTIN_MATERIALS[self.material]
        electric = self.electric.build() if self.electric else VACUUM.electric
        magnetic = self.magnetic.build() if self.magnetic else VACUUM.magnetic
        return MaterialModel(electric, magnetic)


class LayerBlock(MaterialBlock):
    thickness: Positive


class SideBlock(MaterialBlock):
    layers: list[LayerBlock] = []

    def build(self) -> LayerStack:
        return LayerStack(self.build_material(),
                          tuple(Layer(l.build_material(), l.thickness) for l in self.layers))


class ScaleBlock(_Strict):
    plasma_energy_ev: Positive = 9.0


class QuadratureBlock(_Strict):
    rel_tol: Optional[float] = None
    x_max: Optional[float] = None
    max_subdivisions: Optional[int] = None
    matsubara_term_tol: Optional[float] = None
    max_matsubara_terms: Optional[int] = None


class ForceBlock(_Strict):
    d: Positive


class ScanBlock(_Strict):
    d: Optional[list[Positive]] = None
    d_min: Optional[Positive] = None
    d_max: Optional[Positive] = None
    points: int = Field(default=200, ge=1)
    spacing: Literal["linear", "log"] = "linear"

    @model_validator(mode="after")
    def _grid(self):
        if self.d is None and (self.d_min is None or self.d_max is None):
            raise ValueError("scan needs either 'd' or both 'd_min' and 'd_max'")
        if self.d is None and not self.d_min < self.d_max:
            raise ValueError("scan requires d_min < d_max")
        return self

    def grid(self) -> tuple[float, ...]:
        if self.d is not None:
            return tuple(self.d)
        if self.spacing == "log":
            return tuple(np.geomspace(self.d_min, self.d_max, self.points).tolist())
        return tuple(np.linspace(self.d_min, self.d_max, self.points).tolist())


class AxisBlock(_Strict):
    target: str
    values: Optional[list[float]] = None
    start: Optional[float] = None
    stop: Optional[float] = None
    points: int = Field(default=21, ge=1)

    @model_validator(mode="after")
    def _grid(self):
        if self.values is None and (self.start is None or self.stop is None):
            raise ValueError("axis needs 'values' or 'start'/'stop'/'points'")
        return self

    def build(self) -> SweepAxis:
        values = self.values if self.values is not None else \
            np.linspace(self.start, self.stop, self.points).tolist()
        return SweepAxis(self.target, tuple(values))


class SweepBlock(_Strict):
    axis1: AxisBlock
    axis2: AxisBlock


class BracketBlock(_Strict):
    bracket: tuple[Positive, Positive]
    tol_d: Positive = 0.5

    @field_validator("bracket")
    @classmethod
    def _ordered(cls, v):
        if not v[0] < v[1]:
            raise ValueError("bracket must satisfy d_lo < d_hi")
        return v


class ConvertBlock(_Strict):
    d: Positive


class RunConfig(_Strict):
    left: SideBlock
    right: SideBlock
    scale: ScaleBlock = ScaleBlock()
    temperature: Union[Literal["zero"], Annotated[float, Field(ge=0, allow_inf_nan=False)]] = "zero"
    d: Optional[Positive] = None
    quadrature: QuadratureBlock = QuadratureBlock()
    force: Optional[ForceBlock] = None
    scan: Optional[ScanBlock] = None
    sweep: Optional[SweepBlock] = None
    crossover: Optional[BracketBlock] = None
    extremum: Optional[BracketBlock] = None
    convert: Optional[ConvertBlock] = None

    # ---- derived objects

    @property
    def reference_scale(self) -> ReferenceScale:
        return ReferenceScale(self.scale.plasma_energy_ev)

    def settings(self, rel_tol: float | None = None) -> QuadratureSettings:
        overrides = {k: v for k, v in self.quadrature.model_dump().items() if v is not None}
        if rel_tol is not None:
            overrides["rel_tol"] = rel_tol
        try:
            return QuadratureSettings(**overrides)
        except ValueError as exc:
            raise ConfigError(f"quadrature: {exc}") from None

    def reduced_temperature(self, override: str | float | None = None) -> float:
        value = self.temperature if override is None else parse_temperature(override)
        if value == "zero" or value == 0:
            return 0.0
        return reduced_temperature(self.reference_scale, float(value))

    def gap_width(self, override: float | None = None) -> float:
        for candidate in (override, self.force.d if self.force else None, self.d):
            if candidate is not None:
                return float(candidate)
        raise ConfigError("gap width missing: set 'd' (or 'force.d') or pass --distance")

    def cavity(self, d: float | None = None) -> CavityConfig:
        try:
            return CavityConfig(self.left.build(), self.right.build(), self.gap_width(d))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from None

    def sweep_spec(self, t: float, settings: QuadratureSettings, d: float | None = None) -> SweepSpec:
        if self.sweep is None:
            raise ConfigError("sweep: block missing")
        base = self.cavity(d)
        try:
            spec = SweepSpec(self.sweep.axis1.build(), self.sweep.axis2.build(), base, t, settings)
            for axis in (spec.axis1, spec.axis2):
                set_parameter(base, axis.target, axis.values[0])
        except (ValueError, KeyError, IndexError) as exc:
            raise ConfigError(f"sweep: {exc}") from None
        return spec


def parse_temperature(value: str | float) -> str | float:
    if isinstance(value, str):
        if value.strip().lower() == "zero":
            return "zero"
        try:
            value = float(value)
        except ValueError:
            raise ConfigError(f"temperature must be a number of kelvin or 'zero', got {value!r}") from None
    if not (math.isfinite(value) and value >= 0):
        raise ConfigError(f"temperature must be >= 0 kelvin, got {value!r}")
    return value


def _format_errors(exc: ValidationError) -> str:
    lines = []
    tags = {"absolute", "relative", "constant"}
    for err in exc.errors():
        loc = list(err["loc"])
        # drop the union tag pydantic inserts after electric/magnetic
        loc = [p for i, p in enumerate(loc)
               if not (p in tags and i > 0 and loc[i - 1] in ("electric", "magnetic"))]
        path = ".".join(str(p) for p in loc) or "<document>"
        lines.append(f"  {path}: {err['msg']}")
    return "invalid configuration:\n" + "\n".join(lines)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a YAML configuration document."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"configuration is not valid YAML: {exc}") from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping at the top level")
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_format_errors(exc)) from None


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
