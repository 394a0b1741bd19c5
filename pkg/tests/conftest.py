import numpy as np
import pytest

from src.model import SystemParams, reference_params
from src.oracle import OracleSettings


@pytest.fixture
def ref() -> SystemParams:
    """Δa=3, Δm=3.9 (ratio 1.3), κa=1, γm=1, gm=2.4, K>0, Ω=0."""
    return reference_params()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def fast_oracle() -> OracleSettings:
    """Coarser step, longer horizon: RK4 fixed points do not depend on dt."""
    return OracleSettings(dt=5e-3, t_end=400.0, window=1.0, settle_tol=1e-10, divergence_bound=1e6, seed=7)


def point(omega: float, ratio: float, sign: str = "+", **kw) -> SystemParams:
    return reference_params(kerr_sign=sign, **kw).with_ratio(ratio).with_drive(omega)
