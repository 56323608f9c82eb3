"""Kramers-Kronig continuation of tabulated absorption to the imaginary axis."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
import numpy.typing as npt
from scipy.special import roots_legendre

from ...core.constants import (
    KK_HIGH_TAIL_EXPONENT,
    KK_MAX_BISECTIONS,
    KK_PANEL_NODES,
    KK_RTOL,
    KK_SEGMENT_NODES,
    KK_TAIL_DECADES,
)
from ...core.errors import DomainError, InputDataError, NumericalError
from ...core.types import FloatArray
from .models import DielectricModel, DrudeParams, eval_real

# 单次向量化求值的元素上限（节点数 × ξ 个数）
_CHUNK_ELEMENTS = 4_000_000
_LN10 = np.log(10.0)


@dataclass(frozen=True, eq=False)
class TabulatedOptics:
    """
    表格化吸收谱 ε″(ω)，低频用 Drude 外推

    Attributes:
        frequencies: 严格递增的角频率 (rad/s)
        eps_imag: ε″ ≥ 0
        low_freq_extrapolation: 最低表格频率以下的 Drude 外推；None 表示该区间无吸收
    """

    frequencies: FloatArray
    eps_imag: FloatArray
    low_freq_extrapolation: Optional[DrudeParams] = None

    def __post_init__(self):
        w = np.asarray(self.frequencies, dtype=np.float64)
        e = np.asarray(self.eps_imag, dtype=np.float64)
        if w.size == 0:
            raise InputDataError("tabulated optics table is empty")
        if w.ndim != 1 or w.shape != e.shape:
            raise InputDataError("tabulated frequencies and eps_imag must be 1-D arrays of equal length")
        if w.size < 2:
            raise InputDataError("tabulated optics needs at least two rows")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise InputDataError("tabulated frequencies must be finite and > 0")
        if np.any(np.diff(w) <= 0):
            raise InputDataError("tabulated frequencies must be strictly increasing")
        if not np.all(np.isfinite(e)) or np.any(e < 0):
            raise InputDataError("tabulated eps_imag must be finite and >= 0")
        object.__setattr__(self, "frequencies", w)
        object.__setattr__(self, "eps_imag", e)

    def interpolate(self, omega: FloatArray) -> FloatArray:
        """表格区间内插值：全部为正时在 log-log 中线性插值，否则在 ln ω 中线性插值"""
        u = np.log(omega)
        table_u = np.log(self.frequencies)
        if np.all(self.eps_imag > 0):
            return np.exp(np.interp(u, table_u, np.log(self.eps_imag)))
        return np.interp(u, table_u, self.eps_imag)

    def eps_imag_real_axis(self, omega: npt.ArrayLike) -> FloatArray:
        """实轴 ε″(ω)，表格外使用与延拓积分相同的两端外推"""
        w = np.asarray(omega, dtype=np.float64)
        if np.any(~np.isfinite(w)) or np.any(w <= 0):
            raise DomainError("omega must be finite and > 0")
        w_lo, w_hi = self.frequencies[0], self.frequencies[-1]
        inside = np.clip(w, w_lo, w_hi)
        result = self.interpolate(inside)
        above = w > w_hi
        result = np.where(above, self.eps_imag[-1] * (w_hi / w) ** KK_HIGH_TAIL_EXPONENT, result)
        below = w < w_lo
        if self.low_freq_extrapolation is None:
            return np.where(below, 0.0, result)
        return np.where(below, self.low_freq_extrapolation.eps_imag_real_axis(w), result)

    def eps_imag_axis(self, xi: npt.ArrayLike) -> FloatArray:
        return kk_continuation(self, xi)

    def static_tm_reflection(self) -> float:
        if self.low_freq_extrapolation is not None:
            return 1.0
        eps0 = float(_continue(self, np.zeros(1))[0])
        return (eps0 - 1.0) / (eps0 + 1.0)


@lru_cache(maxsize=8)
def _legendre(n: int) -> Tuple[FloatArray, FloatArray]:
    nodes, weights = roots_legendre(n)
    return nodes, weights


def _gauss_legendre(integrand: Callable[[FloatArray, FloatArray], FloatArray],
                    a: FloatArray, b: FloatArray, xi: FloatArray, n: int) -> FloatArray:
    """对一组面板 [a, b] 做 n 点 Gauss-Legendre，返回 (面板数, ξ 数)"""
    nodes, weights = _legendre(n)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    u = mid[:, None] + half[:, None] * nodes[None, :]            # (P, n)
    values = integrand(u[:, :, None], xi[None, None, :])         # (P, n, L)
    return np.einsum("pnl,n->pl", values, weights) * half[:, None]


def _adaptive_panels(integrand: Callable[[FloatArray, FloatArray], FloatArray],
                     edges: FloatArray, xi: FloatArray, n: int, rtol: float) -> FloatArray:
    """
    复合 Gauss-Legendre 自适应积分（变量 u = ln ω）

    每个面板比较整体与对分两半的估计；误差超过按宽度分配的容差时继续对分。

    Returns:
        每个 ξ 的积分值
    """
    a, b = edges[:-1].copy(), edges[1:].copy()
    span = edges[-1] - edges[0]
    accepted = np.zeros(xi.shape, dtype=np.float64)
    for level in range(KK_MAX_BISECTIONS + 1):
        mid = 0.5 * (a + b)
        coarse = _gauss_legendre(integrand, a, b, xi, n)
        fine = (_gauss_legendre(integrand, a, mid, xi, n)
                + _gauss_legendre(integrand, mid, b, xi, n))
        scale = np.abs(accepted + fine.sum(axis=0))
        allowance = rtol * ((b - a) / span)[:, None] * np.maximum(scale, np.finfo(float).tiny)[None, :]
        ok = np.all(np.abs(fine - coarse) <= allowance, axis=1)
        accepted += fine[ok].sum(axis=0)
        if np.all(ok):
            return accepted
        if level == KK_MAX_BISECTIONS:
            break
        a, b, mid = a[~ok], b[~ok], mid[~ok]
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
    raise NumericalError(f"Kramers-Kronig integral did not reach rtol={rtol}")


def _kernel(omega: FloatArray, xi: FloatArray) -> FloatArray:
    # ω²/(ω² + ξ²)，u = ln ω 换元后的雅可比已包含在内
    return omega**2 / (omega**2 + xi**2)


def _continue(data: TabulatedOptics, xi: FloatArray, rtol: float = KK_RTOL) -> FloatArray:
    """ε(iξ) = 1 + (2/π)∫ ω·ε″(ω)/(ω² + ξ²) dω，允许 ξ = 0（静态极限）"""
    w_lo, w_hi = data.frequencies[0], data.frequencies[-1]
    tail_top = data.eps_imag[-1]
    drude = data.low_freq_extrapolation

    def interior(u, x):
        w = np.exp(u)
        return _kernel(w, x) * data.interpolate(w)

    def high_tail(u, x):
        w = np.exp(u)
        return _kernel(w, x) * tail_top * (w_hi / w) ** KK_HIGH_TAIL_EXPONENT

    def low_tail(u, x):
        w = np.exp(u)
        return _kernel(w, x) * drude.eps_imag_real_axis(w)

    u_table = np.log(data.frequencies)
    u_lo, u_hi = u_table[0], u_table[-1]
    tail_edges_hi = u_hi + _LN10 * np.arange(KK_TAIL_DECADES + 1)
    tail_edges_lo = u_lo - _LN10 * np.arange(KK_TAIL_DECADES, -1, -1)

    # 每个表格区间一个面板，区间内插值函数光滑
    per_xi = (u_table.size - 1) * 2 * KK_SEGMENT_NODES * 3
    chunk = max(1, _CHUNK_ELEMENTS // per_xi)
    result = np.empty(xi.shape, dtype=np.float64)
    for start in range(0, xi.size, chunk):
        x = xi[start:start + chunk]
        total = _adaptive_panels(interior, u_table, x, KK_SEGMENT_NODES, rtol)
        if tail_top > 0:
            total += _adaptive_panels(high_tail, tail_edges_hi, x, KK_PANEL_NODES, rtol)
        if drude is not None:
            total += _adaptive_panels(low_tail, tail_edges_lo, x, KK_PANEL_NODES, rtol)
        result[start:start + chunk] = 1.0 + (2.0 / np.pi) * total
    return result


def kk_continuation(data: TabulatedOptics, xi: npt.ArrayLike) -> FloatArray:
    """
    由表格吸收谱计算虚频介电函数

    低于表格的频段使用 Drude 外推 ε″ = ω_p²γ/(ω(ω²+γ²))，
    高于表格的频段按 ε″(ω_max)·(ω_max/ω)³ 外推。相对容差 1e-6。

    Args:
        data: 表格化光学数据
        xi: 虚频 (rad/s)，标量或数组，必须 > 0

    Returns:
        与 xi 同形状的 ε(iξ) ≥ 1

    Raises:
        DomainError: ξ ≤ 0
    """
    x = np.asarray(xi, dtype=np.float64)
    if np.any(~np.isfinite(x)) or np.any(x <= 0):
        raise DomainError("xi must be finite and > 0")
    flat = x.reshape(-1)
    return _continue(data, flat).reshape(x.shape)


def tabulate(model: DielectricModel, frequencies: npt.ArrayLike,
             with_drude_extrapolation: bool = True) -> TabulatedOptics:
    """把模型的 ε″ 在给定频率上制表，模型含 Drude 项时用它做低频外推"""
    w = np.asarray(frequencies, dtype=np.float64)
    eps_imag = np.maximum(eval_real(model, w).imag, 0.0)
    drude = model.drude if with_drude_extrapolation else None
    return TabulatedOptics(w, eps_imag, drude)
