"""Exceptions raised by the numerical core.

Every error carries a plain message; the CLI prints ``error: <Class>: <message>``
and maps configuration problems to exit code 1 and numerical ones to exit code 2.
"""

from __future__ import annotations


class MagnonicsError(Exception):
    """Base class for all numerical errors of the package."""


class DegenerateDenominator(MagnonicsError):
    """|Δa² + κa² − Ω²| is below the singularity tolerance (parametric resonance)."""


class InadmissibleBranch(MagnonicsError):
    """A quantity was requested for a branch with no physical (positive, real) occupation."""


class PhaseInconsistent(MagnonicsError):
    """The phase equation has no unit-modulus solution for the given occupation."""


class ZeroCoupling(MagnonicsError):
    """The operation needs g_m > 0."""


class NoRealThreshold(MagnonicsError):
    """A critical drive has a negative radicand."""


class ConvergenceFailure(MagnonicsError):
    """The dense eigensolver did not converge."""


class UnstableDrift(MagnonicsError):
    """The drift matrix is not stable, so there is no physical steady-state covariance."""


class SingularSystem(MagnonicsError):
    """The vectorized Lyapunov system is numerically singular (marginal stability)."""


class UnstableRegion(MagnonicsError):
    """At least one Kerr sign has no stable steady state at this point."""


class Diverged(MagnonicsError):
    """A time integration left the configured bound."""


class ConfigError(ValueError):
    """Invalid configuration file or command-line value."""
