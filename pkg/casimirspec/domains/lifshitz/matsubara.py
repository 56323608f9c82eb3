"""Matsubara summation engine shared by pressure and free energy."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
import numpy.typing as npt
from scipy.special import expn, roots_laguerre, spence

from ...core.constants import (
    C_LIGHT,
    DEFAULT_QUADRATURE_TOLERANCE,
    DEFAULT_TEMPERATURE,
    DEFAULT_TERM_TOLERANCE,
    HBAR,
    K_B,
    LAGUERRE_MAX_NODES,
    LAGUERRE_NODES,
    MATSUBARA_BLOCK,
    MATSUBARA_MAX_BLOCK,
    MATSUBARA_MAX_TERMS,
    TRUNCATION_RUN,
)
from ...core.errors import ConfigError, DomainError, NumericalError
from ...core.types import FloatArray, ImaginaryResponse
from ...utils.logging import log
from .fresnel import reflections


@dataclass(frozen=True)
class MatsubaraSettings:
    """温度与截断/积分容差"""

    temperature: float = DEFAULT_TEMPERATURE
    term_tolerance: float = DEFAULT_TERM_TOLERANCE
    quadrature_tolerance: float = DEFAULT_QUADRATURE_TOLERANCE

    def __post_init__(self):
        if not np.isfinite(self.temperature) or self.temperature <= 0:
            raise ConfigError(f"temperature must be > 0 K, got {self.temperature!r}")
        for name in ("term_tolerance", "quadrature_tolerance"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise ConfigError(f"{name} must lie in (0, 1), got {value!r}")

    def to_dict(self) -> dict:
        return {
            "temperature": self.temperature,
            "term_tolerance": self.term_tolerance,
            "quadrature_tolerance": self.quadrature_tolerance,
        }


def matsubara_frequency(temperature: float, n: npt.ArrayLike) -> FloatArray:
    """ξ_n = 2πn·k_B·T/ħ"""
    if temperature <= 0:
        raise DomainError(f"temperature must be > 0 K, got {temperature!r}")
    n_arr = np.asarray(n)
    if np.any(n_arr < 0):
        raise DomainError("Matsubara index must be >= 0")
    return 2.0 * np.pi * n_arr.astype(np.float64) * K_B * temperature / HBAR


@lru_cache(maxsize=8)
def _laguerre(n: int) -> Tuple[FloatArray, FloatArray]:
    return roots_laguerre(n)


class ResponseTable:
    """
    两种材料在 ξ_1, ξ_2, ... 上的 ε(iξ_n)，按需扩展

    同一条力曲线的所有间距共享一张表，Matsubara 频率与 d 无关。
    """

    def __init__(self, mat1: ImaginaryResponse, mat2: ImaginaryResponse, temperature: float):
        self.mat1 = mat1
        self.mat2 = mat2
        self.temperature = temperature
        self._eps1 = np.empty(0)
        self._eps2 = np.empty(0)
        self.static_product = mat1.static_tm_reflection() * mat2.static_tm_reflection()

    def block(self, n_start: int, n_stop: int) -> Tuple[FloatArray, FloatArray]:
        """返回 n ∈ [n_start, n_stop) 的 (ε1, ε2)，n_start ≥ 1"""
        have = self._eps1.size
        if n_stop - 1 > have:
            grow_to = max(n_stop - 1, 2 * have)
            xi = matsubara_frequency(self.temperature, np.arange(have + 1, grow_to + 1))
            self._eps1 = np.concatenate([self._eps1, self.mat1.eps_imag_axis(xi)])
            self._eps2 = np.concatenate([self._eps2, self.mat2.eps_imag_axis(xi)])
        return self._eps1[n_start - 1:n_stop - 1], self._eps2[n_start - 1:n_stop - 1]


# 积分核：输入 y = 2κ0·d、每个偏振的 x·e^{-y0}（节点上 (B, N)）、同一量在 y = y0 处的值 (B, 1)
# 与 e^{-t}（(1, N)），返回去掉 Laguerre 权重 e^{-t} 之后的被积函数
Kernel = Callable[[FloatArray, FloatArray, FloatArray, FloatArray], FloatArray]

# 解析部分：输入 y0 (B,) 与某一偏振在 y0 处的 x (B,)，返回该偏振的积分贡献
ClosedForm = Callable[[FloatArray, FloatArray], FloatArray]

# 三重多对数级数的项数；其余部分用 E_3 尾积分近似（中点规则）
TRILOG_TERMS = 512


def trilog(u: npt.ArrayLike) -> FloatArray:
    """Li₃(u)，u ∈ [0, 1]"""
    u = np.clip(np.asarray(u, dtype=np.float64), 0.0, 1.0)
    k = np.arange(1, TRILOG_TERMS + 1, dtype=np.float64)
    head = np.sum(u[..., None] ** k / k**3, axis=-1)
    with np.errstate(divide="ignore"):
        b = np.abs(np.log(u))
    a = TRILOG_TERMS + 0.5
    return head + expn(3, a * b) / a**2


def dilog(u: npt.ArrayLike) -> FloatArray:
    """Li₂(u)，u ∈ [0, 1]"""
    return spence(1.0 - np.clip(np.asarray(u, dtype=np.float64), 0.0, 1.0))


def _log_weighted(xq: FloatArray, e_t: FloatArray) -> FloatArray:
    # e^{t}·ln(1 − x e^{-y}) = x e^{-y0}·ln(1 − z)/z，z → 0 时比值趋于 −1
    z = xq * e_t
    safe = np.where(z != 0.0, z, 1.0)
    return xq * np.where(z != 0.0, np.log1p(-safe) / safe, -1.0)


def pressure_kernel(y: FloatArray, xq: FloatArray, xq0: FloatArray, e_t: FloatArray) -> FloatArray:
    return y**2 * xq / (1.0 - xq * e_t)


def energy_kernel(y: FloatArray, xq: FloatArray, xq0: FloatArray, e_t: FloatArray) -> FloatArray:
    # 减去 x 冻结在 x(y0) 时的对数项；当 x(y0)·e^{-y0} → 1 时它在 y0 附近近奇异，由 energy_closed_form 解析积分
    return y * (_log_weighted(xq, e_t) - _log_weighted(xq0, e_t))


def energy_closed_form(y0: FloatArray, x0: FloatArray) -> FloatArray:
    """∫_{y0}^∞ y·ln(1 − x0·e^{-y}) dy = −[y0·Li₂(u) + Li₃(u)]，u = x0·e^{-y0}"""
    u = x0 * np.exp(-y0)
    return -(y0 * dilog(u) + trilog(u))


@dataclass(frozen=True)
class Integrand:
    """Laguerre 求积的光滑部分与（可选的）解析部分"""

    kernel: Kernel
    closed_form: Optional[ClosedForm] = None


PRESSURE = Integrand(pressure_kernel)
FREE_ENERGY = Integrand(energy_kernel, energy_closed_form)


def _products(eps1: FloatArray, eps2: FloatArray, xi_c: FloatArray,
              kappa0: FloatArray) -> Tuple[FloatArray, FloatArray]:
    r1_te, r1_tm = reflections(eps1, xi_c, kappa0)
    r2_te, r2_tm = reflections(eps2, xi_c, kappa0)
    return r1_te * r2_te, r1_tm * r2_tm


def _laguerre_sum(kernel: Kernel, y0: FloatArray, products: Tuple[FloatArray, ...],
                  edge: Tuple[FloatArray, FloatArray], d: float, xi_c: FloatArray,
                  eps1: FloatArray, eps2: FloatArray, n_nodes: int) -> FloatArray:
    """对一个 Matsubara 块求 ∫ 被积函数 dy（y 从 y0 到 ∞），返回 (B,)"""
    t, w = _laguerre(n_nodes)
    y = y0[:, None] + t[None, :]
    q = np.exp(-y0)[:, None]
    e_t = np.exp(-t)[None, :]
    if products:
        x_te, x_tm = (np.broadcast_to(np.asarray(x, dtype=np.float64).reshape(-1, 1), y.shape)
                      for x in products)
    else:
        x_te, x_tm = _products(eps1[:, None], eps2[:, None], xi_c[:, None], y / (2.0 * d))
    x0_te, x0_tm = (x.reshape(-1, 1) for x in edge)
    values = kernel(y, x_te * q, x0_te * q, e_t) + kernel(y, x_tm * q, x0_tm * q, e_t)
    return values @ w


def _block_integrals(integrand: Integrand, d: float, n: FloatArray, xi: FloatArray,
                     eps1: FloatArray, eps2: FloatArray, settings: MatsubaraSettings,
                     products: Tuple[FloatArray, ...] = ()) -> FloatArray:
    """Gauss-Laguerre 节点数倍增，直到块内最大变化小于容差（相对块内最大项）"""
    xi_c = xi / C_LIGHT
    y0 = 2.0 * xi_c * d
    if products:
        edge = tuple(np.broadcast_to(np.asarray(x, dtype=np.float64), y0.shape) for x in products)
    else:
        edge = _products(eps1, eps2, xi_c, xi_c)
    offset = np.zeros_like(y0)
    if integrand.closed_form is not None:
        offset = integrand.closed_form(y0, edge[0]) + integrand.closed_form(y0, edge[1])

    def total(nodes: int) -> FloatArray:
        return offset + _laguerre_sum(integrand.kernel, y0, products, edge, d, xi_c, eps1, eps2, nodes)

    nodes = LAGUERRE_NODES
    previous = total(nodes)
    change = np.zeros_like(previous)
    while nodes < LAGUERRE_MAX_NODES:
        nodes *= 2
        current = total(nodes)
        change = np.abs(current - previous)
        scale = np.max(np.abs(current))
        if np.all(change <= settings.quadrature_tolerance * scale):
            return current
        previous = current
    worst = int(n[np.argmax(change)])
    log(f"Laguerre quadrature failed to converge at n={worst}, d={d!r}")
    raise NumericalError("wavevector quadrature did not converge", n=worst, d=d)


def matsubara_sum(integrand: Integrand, d: float, table: ResponseTable, settings: MatsubaraSettings) -> float:
    """
    Σ′_n ∫ dy 被积函数（n = 0 项减半）

    n = 0 项：r_TE = 0，r_TM 取各材料的静态极限。
    截断：连续 5 项均不超过 term_tolerance × 当前累计和时停止。
    """
    zero = np.zeros(1)
    static = (np.zeros(1), np.full(1, table.static_product))
    total = 0.5 * float(_block_integrals(integrand, d, zero, zero, zero, zero, settings, static)[0])

    n_start, block, small_run = 1, MATSUBARA_BLOCK, 0
    while n_start <= MATSUBARA_MAX_TERMS:
        n_stop = n_start + block
        eps1, eps2 = table.block(n_start, n_stop)
        n = np.arange(n_start, n_stop)
        xi = matsubara_frequency(settings.temperature, n)
        terms = _block_integrals(integrand, d, n, xi, eps1, eps2, settings)
        for term in terms:
            total += float(term)
            if abs(term) <= settings.term_tolerance * abs(total):
                small_run += 1
                if small_run >= TRUNCATION_RUN:
                    return total
            else:
                small_run = 0
        n_start = n_stop
        block = min(2 * block, MATSUBARA_MAX_BLOCK)
    log(f"Matsubara series did not converge within {MATSUBARA_MAX_TERMS} terms, d={d!r}")
    raise NumericalError("Matsubara series did not converge", n=n_start, d=d)
