"""Reproducibility helper: seeded random generators."""

import numpy as np


def make_rng(seed: int = 42, *stream: int) -> np.random.Generator:
    """Independent generator per (seed, stream...) so per-point draws do not depend on evaluation order."""
    return np.random.default_rng([seed, *stream])
