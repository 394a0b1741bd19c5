"""Quadrature covariance and magnon-number fluctuations."""

from .lyapunov import (
    CovarianceMatrix,
    DiffusionMatrix,
    FluctuationResult,
    branch_fluctuations,
    diffusion_matrix,
    log_fluctuations,
    lyapunov_residual,
    magnon_fluctuations,
    photon_fluctuations,
    solve_lyapunov,
)

__all__ = [
    "CovarianceMatrix",
    "DiffusionMatrix",
    "FluctuationResult",
    "branch_fluctuations",
    "diffusion_matrix",
    "log_fluctuations",
    "lyapunov_residual",
    "magnon_fluctuations",
    "photon_fluctuations",
    "solve_lyapunov",
]
