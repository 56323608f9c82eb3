"""Additive relative Gaussian noise."""

import numpy as np

from ...core.errors import ConfigError
from ..lifshitz.curves import ForceCurve


def add_relative_noise(curve: ForceCurve, sigma_rel: float, rng: np.random.Generator) -> ForceCurve:
    """每点加 N(0, (sigma_rel·|F|)²) 噪声；sigma_rel = 0 时原样返回"""
    if not np.isfinite(sigma_rel) or sigma_rel < 0:
        raise ConfigError(f"noise level must be >= 0, got {sigma_rel!r}")
    if sigma_rel == 0:
        return curve
    noise = rng.normal(0.0, 1.0, size=len(curve)) * sigma_rel * np.abs(curve.values)
    return curve.with_values(curve.values + noise)
