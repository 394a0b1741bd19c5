"""Pydantic run configuration and flat key=value config files.

A run is fully described by a `RunConfig` instance. It validates the config
file and command-line overrides at load time and hands typed pieces (the
physical operating point, tolerances, sweep axes, oracle settings) to the
numerical modules.

Rates (delta_a, gamma_m, g_m, omega, kerr_abs) are given in the same unit as
kappa_a and are normalized to units of kappa_a on ingestion. Grid extents
(omega_min, omega_max) are already in units of kappa_a.
"""

from __future__ import annotations

import os
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import ConfigError
from .model import KerrSign, SystemParams, Tolerances
from .oracle import OracleSettings
from .sweep import AxisRange, SweepSpec

JOBS_ENV = "MAGNONIC_JOBS"


class RunConfig(BaseModel):
    """Every key accepted by config files and ``--key value`` flags."""

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    # operating point
    delta_a: float = Field(3.0, gt=0)
    delta_m_over_delta_a: float = Field(1.3, gt=0)
    kappa_a: float = Field(1.0, gt=0)
    gamma_m: float = Field(1.0, gt=0)
    g_m: float = Field(2.4, ge=0)
    kerr_sign: KerrSign = KerrSign.POSITIVE
    kerr_abs: float = Field(1.0, gt=0)
    omega: float = Field(2.2, ge=0)
    nbar_a: float = Field(0.0, ge=0)
    nbar_m: float = Field(0.0, ge=0)

    # grids
    omega_min: float = 1.8
    omega_max: float = 2.4
    omega_count: int = Field(400, ge=2)
    cut_count: int = Field(2000, ge=2)
    ratio_min: float = Field(0.6, gt=0)
    ratio_max: float = Field(1.4, gt=0)
    ratio_count: int = Field(400, ge=2)
    oracle_count: int = Field(20, ge=2)
    hysteresis_count: int = Field(121, ge=2)

    # tolerances
    eps_den: float = Field(1e-9, gt=0)
    tol_phase: float = Field(1e-6, gt=0)
    tol_fp: float = Field(1e-8, gt=0)
    tol_stab: float = Field(1e-9, gt=0)
    marginal_band: float = Field(1e-6, gt=0)
    eps_rel: float = Field(1e-9, gt=0)

    # oracle
    dt: float = Field(1e-3, gt=0)
    t_end: float = Field(200.0, gt=0)
    max_t_end: float = Field(1600.0, gt=0)
    window: float = Field(1.0, gt=0)
    settle_tol: float = Field(1e-9, gt=0)
    divergence_bound: float = Field(1e6, gt=0)
    seed: int = 42

    # execution
    jobs: Optional[int] = Field(None, ge=1)
    format: str = "csv"

    @field_validator("kerr_sign", mode="before")
    @classmethod
    def _parse_sign(cls, v):
        return KerrSign.parse(v)

    @field_validator("format")
    @classmethod
    def _known_format(cls, v: str) -> str:
        if v not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        return v

    @model_validator(mode="after")
    def _ranges(self) -> "RunConfig":
        if not self.omega_min < self.omega_max:
            raise ValueError("omega_min must be < omega_max")
        if not self.ratio_min < self.ratio_max:
            raise ValueError("ratio_min must be < ratio_max")
        if not self.dt < self.t_end:
            raise ValueError("dt must be < t_end")
        if self.max_t_end < self.t_end:
            raise ValueError("max_t_end must be >= t_end")
        return self

    # typed views

    def system_params(self) -> SystemParams:
        """Operating point in units of kappa_a."""
        k = self.kappa_a
        return SystemParams(
            delta_a=self.delta_a / k,
            delta_m=self.delta_m_over_delta_a * self.delta_a / k,
            kappa_a=1.0,
            gamma_m=self.gamma_m / k,
            g_m=self.g_m / k,
            kerr_sign=self.kerr_sign,
            kerr_magnitude=self.kerr_abs / k,
            omega_drive=self.omega / k,
            nbar_a=self.nbar_a,
            nbar_m=self.nbar_m,
        )

    def tolerances(self) -> Tolerances:
        return Tolerances(
            eps_den=self.eps_den,
            tol_phase=self.tol_phase,
            tol_fp=self.tol_fp,
            tol_stab=self.tol_stab,
            marginal_band=self.marginal_band,
            eps_rel=self.eps_rel,
        )

    def oracle_settings(self) -> OracleSettings:
        return OracleSettings(
            dt=self.dt,
            t_end=self.t_end,
            max_t_end=self.max_t_end,
            window=self.window,
            settle_tol=self.settle_tol,
            divergence_bound=self.divergence_bound,
            seed=self.seed,
        )

    def omega_axis(self, count: Optional[int] = None) -> AxisRange:
        return AxisRange(min=self.omega_min, max=self.omega_max, count=count or self.omega_count)

    def ratio_axis(self, count: Optional[int] = None) -> AxisRange:
        return AxisRange(min=self.ratio_min, max=self.ratio_max, count=count or self.ratio_count)

    def grid_spec(self) -> SweepSpec:
        """Ω × Δm/Δa grid for diagrams and contrast maps."""
        return SweepSpec(omega=self.omega_axis(), ratio=self.ratio_axis(), base=self.system_params(), tol=self.tolerances())

    def cut_spec(self) -> SweepSpec:
        """Ω axis at the configured Δm/Δa for 1-D cuts."""
        return SweepSpec(
            omega=self.omega_axis(self.cut_count),
            fixed_ratio=self.delta_m_over_delta_a,
            base=self.system_params(),
            tol=self.tolerances(),
        )

    def resolved_jobs(self) -> int:
        """--jobs, else $MAGNONIC_JOBS, else the machine's CPU count."""
        if self.jobs is not None:
            return self.jobs
        raw = os.environ.get(JOBS_ENV)
        if raw:
            try:
                n = int(raw)
            except ValueError as e:
                raise ConfigError(f"{JOBS_ENV}={raw!r} is not an integer") from e
            if n < 1:
                raise ConfigError(f"{JOBS_ENV} must be >= 1")
            return n
        return os.cpu_count() or 1


CONFIG_KEYS: List[str] = list(RunConfig.model_fields)


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, str]:
    """Flat ``key=value`` lines; ``#`` starts a comment; blank lines are ignored."""
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in RunConfig.model_fields:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def load_config_file(path: str) -> Dict[str, str]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e.strerror}") from e
    return parse_config_text(text, source=path)


def build_config(file_values: Optional[Dict[str, str]] = None, overrides: Optional[Dict[str, object]] = None) -> RunConfig:
    """File values first, then command-line overrides; validation errors become ConfigError."""
    merged: Dict[str, object] = dict(file_values or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    if merged.get("jobs") in ("", "none", "None"):
        merged.pop("jobs")
    try:
        return RunConfig(**merged)
    except ValidationError as e:
        first = e.errors()[0]
        loc = ".".join(str(p) for p in first.get("loc", ())) or "config"
        raise ConfigError(f"{loc}: {first.get('msg')}") from e


def dump_config(cfg: RunConfig) -> str:
    """Effective config in the file format; loading it back yields an equal RunConfig."""
    lines = ["# effective run configuration"]
    for key in CONFIG_KEYS:
        value = getattr(cfg, key)
        if value is None:
            continue
        if isinstance(value, KerrSign):
            value = value.value
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"
