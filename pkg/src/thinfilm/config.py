"""Experiment configuration: flat dotted-key files, validation, object build.

The on-disk format is one `key = value` pair per line with `#` comments,
e.g. ``model.alpha = 0.5``.  Unknown keys and invalid values are rejected
with the offending key named, so a bad config fails before any stepping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .forcing import (
    ConstantForce,
    CosineProfile,
    DryOutError,
    Force,
    static_force,
    time_dependent_force,
)
from .grid import Grid
from .model import Ellis, FluidModel, PowerLaw
from .stepper import StepControl


class ConfigError(ValueError):
    """Invalid or unknown configuration entry; names the failing key."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a run needs, in plain values (objects built on demand)."""

    name: str = "run"
    model_kind: str = "power-law"  # power-law | ellis
    alpha: float = 1.0
    a: float = 1.0
    b: float = 1.0
    c: float = 1.0
    eps_reg: float = 1e-8
    L: float = 100.0
    N: int = 0  # 0 means the default 2 cells per unit length
    u0_A: float = 3.0
    u0_B: float = 0.0
    u0_m: float = 10.0
    force_kind: str = "constant"  # exp | power | static | constant
    force_kappa: float = 1.0
    force_beta: float = 2.0
    force_A: float = 1.0
    force_B: float = 0.0
    force_m: float = 10.0
    force_f0: float = 0.0
    t_end: float = 1.0
    cfl: float = 0.4
    dt_max: float = 1e-2
    record_every: float = 0.01
    tol_extinct: float = 1e-6
    max_steps: int = 2_000_000_000
    seed: int = 0
    csv_path: str = ""
    svg_path: str = ""
    report_path: str = ""

    def cells(self) -> int:
        return self.N if self.N > 0 else int(round(2 * self.L))

    def build_grid(self) -> Grid:
        try:
            return Grid(self.L, self.cells())
        except ValueError as e:
            raise ConfigError("grid.L/grid.N", str(e)) from e

    def build_model(self) -> FluidModel:
        try:
            if self.model_kind == "power-law":
                return PowerLaw(alpha=self.alpha, a=self.a, eps_reg=self.eps_reg)
            if self.model_kind == "ellis":
                return Ellis(alpha=self.alpha, b=self.b, c=self.c, eps_reg=self.eps_reg)
        except ValueError as e:
            raise ConfigError("model", str(e)) from e
        raise ConfigError("model.kind", f"must be power-law or ellis, got {self.model_kind!r}")

    def build_u0_profile(self) -> CosineProfile:
        try:
            prof = CosineProfile(self.u0_A, self.u0_B, self.u0_m)
            prof.validate_on_domain(self.L)
            return prof
        except ValueError as e:
            raise ConfigError("u0", str(e)) from e

    def build_force(self) -> Force:
        try:
            if self.force_kind == "constant":
                if self.force_f0 < 0:
                    raise DryOutError(self.force_f0, u0_mean=self.u0_A)
                return ConstantForce(self.force_f0, self.L)
            prof = CosineProfile(self.force_A, self.force_B, self.force_m)
            if self.force_kind == "static":
                return static_force(prof, self.L)
            if self.force_kind == "exp":
                return time_dependent_force(prof, self.L, kappa=self.force_kappa)
            if self.force_kind == "power":
                return time_dependent_force(prof, self.L, beta=self.force_beta)
        except ConfigError:
            raise
        except ValueError as e:
            raise ConfigError("force", str(e)) from e
        raise ConfigError(
            "force.kind", f"must be exp, power, static or constant, got {self.force_kind!r}"
        )

    def build_control(self) -> StepControl:
        try:
            return StepControl(
                t_end=self.t_end,
                cfl=self.cfl,
                dt_max=self.dt_max,
                record_every=self.record_every,
                tol_extinct=self.tol_extinct,
                max_steps=self.max_steps,
            )
        except ValueError as e:
            raise ConfigError("control", str(e)) from e

    def validate(self) -> "ExperimentConfig":
        """Build every component once so all invariants are checked."""
        self.build_grid()
        self.build_model()
        self.build_u0_profile()
        self.build_force()
        self.build_control()
        return self

    def with_updates(self, **kw) -> "ExperimentConfig":
        return replace(self, **kw)


_KEY_MAP = {
    "name": ("name", str),
    "model.kind": ("model_kind", str),
    "model.alpha": ("alpha", float),
    "model.a": ("a", float),
    "model.b": ("b", float),
    "model.c": ("c", float),
    "model.eps_reg": ("eps_reg", float),
    "grid.L": ("L", float),
    "grid.N": ("N", int),
    "u0.A": ("u0_A", float),
    "u0.B": ("u0_B", float),
    "u0.m": ("u0_m", float),
    "force.kind": ("force_kind", str),
    "force.kappa": ("force_kappa", float),
    "force.beta": ("force_beta", float),
    "force.A": ("force_A", float),
    "force.B": ("force_B", float),
    "force.m": ("force_m", float),
    "force.f0": ("force_f0", float),
    "control.t_end": ("t_end", float),
    "control.cfl": ("cfl", float),
    "control.dt_max": ("dt_max", float),
    "control.record_every": ("record_every", float),
    "control.tol_extinct": ("tol_extinct", float),
    "control.max_steps": ("max_steps", int),
    "seed": ("seed", int),
    "output.csv": ("csv_path", str),
    "output.svg": ("svg_path", str),
    "output.report": ("report_path", str),
}

_FIELD_TO_KEY = {f: k for k, (f, _) in _KEY_MAP.items()}


def apply_entries(config: ExperimentConfig, entries: dict[str, str]) -> ExperimentConfig:
    """Overlay `key = value` entries onto a config, with typed parsing."""
    updates = {}
    for key, raw in entries.items():
        if key not in _KEY_MAP:
            raise ConfigError(key, "unknown configuration key")
        field_name, typ = _KEY_MAP[key]
        try:
            if typ is int:
                updates[field_name] = int(raw)
            elif typ is float:
                val = float(raw)
                if math.isnan(val):
                    raise ValueError("NaN is not a valid setting")
                updates[field_name] = val
            else:
                updates[field_name] = str(raw)
        except ValueError as e:
            raise ConfigError(key, f"cannot parse {raw!r} as {typ.__name__} ({e})") from e
    return config.with_updates(**updates)


def parse_config_text(text: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    entries: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {line.strip()!r}")
        key, _, raw = stripped.partition("=")
        entries[key.strip()] = raw.strip()
    return apply_entries(base or ExperimentConfig(), entries)


def load_config(path: str | Path, base: ExperimentConfig | None = None) -> ExperimentConfig:
    return parse_config_text(Path(path).read_text(), base=base)


def to_entries(config: ExperimentConfig) -> dict[str, str]:
    """Flatten a config back to its dotted-key entries (round-trippable)."""
    out = {}
    for f in fields(config):
        key = _FIELD_TO_KEY.get(f.name)
        if key is None:
            continue
        out[key] = str(getattr(config, f.name))
    return out
