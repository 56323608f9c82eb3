"""Plate-plate Casimir pressure and free energy per unit area."""

from typing import Optional

import numpy as np

from ...core.constants import K_B
from ...core.errors import DomainError
from ...core.types import ImaginaryResponse
from .matsubara import (
    FREE_ENERGY,
    PRESSURE,
    MatsubaraSettings,
    ResponseTable,
    matsubara_sum,
)


def _check_separation(d: float) -> float:
    d = float(d)
    if not np.isfinite(d) or d <= 0:
        raise DomainError(f"separation must be > 0 m, got {d!r}")
    return d


def pressure(d: float, mat1: ImaginaryResponse, mat2: ImaginaryResponse,
             settings: Optional[MatsubaraSettings] = None,
             table: Optional[ResponseTable] = None) -> float:
    """
    Lifshitz 压强（Pa），负值表示吸引

    P(d) = −(k_B·T/π)·Σ′_n ∫ k dk κ0 Σ_p r₁ᵖr₂ᵖ e^{−2κ0d}/(1 − r₁ᵖr₂ᵖ e^{−2κ0d})

    以 y = 2κ0·d 换元后 k dk κ0 = y² dy/(8d³)，指数因子交给 Gauss-Laguerre 权重。

    Args:
        d: 间距 (m)
        mat1, mat2: 虚频响应提供者
        settings: Matsubara 设置，默认 300 K
        table: 可复用的 ε(iξ_n) 缓存（force_curve 内部使用）

    Raises:
        DomainError: d ≤ 0
        NumericalError: 积分或求和不收敛
    """
    d = _check_separation(d)
    settings = settings or MatsubaraSettings()
    table = table or ResponseTable(mat1, mat2, settings.temperature)
    series = matsubara_sum(PRESSURE, d, table, settings)
    return -(K_B * settings.temperature / np.pi) * series / (8.0 * d**3)


def free_energy_per_area(d: float, mat1: ImaginaryResponse, mat2: ImaginaryResponse,
                         settings: Optional[MatsubaraSettings] = None,
                         table: Optional[ResponseTable] = None) -> float:
    """
    单位面积自由能（J/m²）

    F(d) = (k_B·T/2π)·Σ′_n ∫ k dk Σ_p ln(1 − r₁ᵖr₂ᵖ e^{−2κ0d})，换元后 k dk = y dy/(4d²)

    金属的 n = 0 项（r_TM → 1）被积函数在 y → 0 处为 y·ln y 型，该部分用 Li₂/Li₃ 闭式计算。
    """
    d = _check_separation(d)
    settings = settings or MatsubaraSettings()
    table = table or ResponseTable(mat1, mat2, settings.temperature)
    series = matsubara_sum(FREE_ENERGY, d, table, settings)
    return (K_B * settings.temperature / (2.0 * np.pi)) * series / (4.0 * d**2)
