"""Parameter schema shared by every module.

All rates and detunings are stored in units of the cavity decay rate κa.
`SystemParams` is a frozen pydantic model, so a validated operating point can
be passed between worker processes and reused as a template
(`params.model_copy(update=...)`) without ever being mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class KerrSign(str, Enum):
    """Sign of the magnon Kerr coefficient K ([100] bias → +, [110] bias → −)."""

    POSITIVE = "+"
    NEGATIVE = "-"

    @property
    def factor(self) -> float:
        return 1.0 if self is KerrSign.POSITIVE else -1.0

    def flipped(self) -> "KerrSign":
        return KerrSign.NEGATIVE if self is KerrSign.POSITIVE else KerrSign.POSITIVE

    @classmethod
    def parse(cls, raw: object) -> "KerrSign":
        if isinstance(raw, KerrSign):
            return raw
        text = str(raw).strip().lower()
        if text in {"+", "+1", "1", "pos", "positive"}:
            return cls.POSITIVE
        if text in {"-", "-1", "neg", "negative"}:
            return cls.NEGATIVE
        raise ValueError(f"kerr_sign must be '+' or '-', got {raw!r}")


class SystemParams(BaseModel):
    """One operating point of the driven cavity-magnon system."""

    model_config = ConfigDict(frozen=True)

    delta_a: float = Field(..., gt=0, description="cavity detuning Δa")
    delta_m: float = Field(..., gt=0, description="magnon detuning Δm")
    kappa_a: float = Field(1.0, gt=0, description="cavity decay rate κa (the unit)")
    gamma_m: float = Field(..., gt=0, description="magnon decay rate γm")
    g_m: float = Field(..., ge=0, description="cavity-magnon coupling gm")
    kerr_sign: KerrSign = KerrSign.POSITIVE
    kerr_magnitude: float = Field(1.0, gt=0, description="|K|")
    omega_drive: float = Field(0.0, ge=0, description="parametric drive strength Ω")
    nbar_a: float = Field(0.0, ge=0, description="cavity thermal occupancy")
    nbar_m: float = Field(0.0, ge=0, description="magnon thermal occupancy")

    @property
    def kerr(self) -> float:
        """Signed Kerr coefficient K."""
        return self.kerr_sign.factor * self.kerr_magnitude

    @property
    def detuning_ratio(self) -> float:
        return self.delta_m / self.delta_a

    def with_drive(self, omega: float) -> "SystemParams":
        return self.model_copy(update={"omega_drive": float(omega)})

    def with_ratio(self, ratio: float) -> "SystemParams":
        return self.model_copy(update={"delta_m": float(ratio) * self.delta_a})

    def with_sign(self, sign: KerrSign) -> "SystemParams":
        return self.model_copy(update={"kerr_sign": KerrSign.parse(sign)})


@dataclass(frozen=True)
class DerivedQuantities:
    """η, Δ′m and γ′m of the steady-state branch formulas."""

    eta: float
    delta_m_prime: float
    gamma_m_prime: float


class Tolerances(BaseModel):
    """Numerical tolerances, all in normalized units."""

    model_config = ConfigDict(frozen=True)

    eps_den: float = Field(1e-9, gt=0, description="parametric singularity guard")
    tol_phase: float = Field(1e-6, gt=0, description="unit-modulus check of the phase equation")
    tol_fp: float = Field(1e-8, gt=0, description="fixed-point residual bound")
    tol_stab: float = Field(1e-9, gt=0, description="stability margin on max Re(λ)")
    marginal_band: float = Field(1e-6, gt=0, description="near-marginal flag for covariances")
    eps_rel: float = Field(1e-9, gt=0, description="relative equality test of the contrast ratio")


DEFAULT_TOLERANCES = Tolerances()


def reference_params(**overrides) -> SystemParams:
    """Reference operating point of the phase diagrams: Δa=3, gm=2.4, γm=1 (units of κa)."""
    base = dict(delta_a=3.0, delta_m=3.9, kappa_a=1.0, gamma_m=1.0, g_m=2.4)
    base.update(overrides)
    if "kerr_sign" in base:
        base["kerr_sign"] = KerrSign.parse(base["kerr_sign"])
    return SystemParams(**base)
