"""Imaginary-frequency Fresnel coefficients."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ...core.constants import C_LIGHT
from ...core.errors import DomainError
from ...core.types import FloatArray


@dataclass(frozen=True)
class ReflectionPair:
    """真空/介质界面的 TE、TM 反射系数及真空衰减常数 κ0 (1/m)"""

    r_te: float
    r_tm: float
    kappa0: float


def reflections(eps: FloatArray, xi_over_c: FloatArray, kappa0: FloatArray) -> Tuple[FloatArray, FloatArray]:
    """
    向量化反射系数，参数按 numpy 规则广播

    κ_m = √(κ0² + (ε − 1)ξ²/c²)，与 √(k² + εξ²/c²) 等价但在 ε ≈ 1 时更稳定。
    """
    kappa_m = np.sqrt(kappa0**2 + (eps - 1.0) * xi_over_c**2)
    r_te = (kappa0 - kappa_m) / (kappa0 + kappa_m)
    r_tm = (eps * kappa0 - kappa_m) / (eps * kappa0 + kappa_m)
    return r_te, r_tm


def fresnel(eps: float, xi: float, k: float) -> ReflectionPair:
    """
    虚频 Fresnel 系数

    Args:
        eps: ε(iξ) ≥ 1
        xi: 虚频 (rad/s) > 0
        k: 横向波矢 (1/m) ≥ 0

    Returns:
        ReflectionPair，满足 r_TE ≤ 0 ≤ r_TM

    Raises:
        DomainError: ε < 1、ξ ≤ 0 或 k < 0
    """
    if not np.isfinite(eps) or eps < 1.0:
        raise DomainError(f"permittivity on the imaginary axis must be >= 1, got {eps!r}")
    if not np.isfinite(xi) or xi <= 0:
        raise DomainError(f"xi must be > 0, got {xi!r}")
    if not np.isfinite(k) or k < 0:
        raise DomainError(f"k must be >= 0, got {k!r}")
    xi_c = xi / C_LIGHT
    kappa0 = float(np.sqrt(k**2 + xi_c**2))
    r_te, r_tm = reflections(np.float64(eps), np.float64(xi_c), np.float64(kappa0))
    return ReflectionPair(float(r_te), float(r_tm), kappa0)
