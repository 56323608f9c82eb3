"""Drude-Lorentz dielectric models evaluated on the real and imaginary axes."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt

from ...core.constants import ELEMENTARY_CHARGE, HBAR
from ...core.errors import ConfigError, DomainError, InputDataError
from ...core.types import FloatArray
from .grid import FrequencyGrid


def ev_to_rad_s(energy_ev: npt.ArrayLike) -> FloatArray:
    """光子能量 (eV) -> 角频率 (rad/s)：ω = E·e/ħ"""
    return np.asarray(energy_ev, dtype=np.float64) * ELEMENTARY_CHARGE / HBAR


def rad_s_to_ev(omega: npt.ArrayLike) -> FloatArray:
    """角频率 (rad/s) -> 光子能量 (eV)"""
    return np.asarray(omega, dtype=np.float64) * HBAR / ELEMENTARY_CHARGE


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ConfigError(f"{name} must be finite and > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class DrudeParams:
    """Drude 自由载流子参数：等离子体频率 ω_p 与阻尼 γ（rad/s）"""

    plasma_frequency: float
    damping: float

    def __post_init__(self):
        object.__setattr__(self, "plasma_frequency", _positive("plasma_frequency", self.plasma_frequency))
        object.__setattr__(self, "damping", _positive("damping", self.damping))

    def eps_imag_real_axis(self, omega: npt.ArrayLike) -> FloatArray:
        """实频 ε″_Drude(ω) = ω_p²γ / (ω(ω² + γ²))"""
        w = np.asarray(omega, dtype=np.float64)
        wp, g = self.plasma_frequency, self.damping
        return wp**2 * g / (w * (w**2 + g**2))

    def to_dict(self) -> dict:
        return {"plasma_frequency": self.plasma_frequency, "damping": self.damping}

    @classmethod
    def from_dict(cls, data: dict) -> "DrudeParams":
        return cls(data["plasma_frequency"], data["damping"])


@dataclass(frozen=True)
class LorentzOscillator:
    """Lorentz 束缚电子振子：强度 Ω_j、共振频率 ω_j、阻尼 γ_j（rad/s）"""

    strength: float
    resonance: float
    damping: float

    def __post_init__(self):
        object.__setattr__(self, "strength", _positive("strength", self.strength))
        object.__setattr__(self, "resonance", _positive("resonance", self.resonance))
        object.__setattr__(self, "damping", _positive("damping", self.damping))

    def to_dict(self) -> dict:
        return {"strength": self.strength, "resonance": self.resonance, "damping": self.damping}

    @classmethod
    def from_dict(cls, data: dict) -> "LorentzOscillator":
        return cls(data["strength"], data["resonance"], data["damping"])


@dataclass(frozen=True)
class DielectricModel:
    """
    Drude + N 个 Lorentz 振子的介电模型

    至少包含 Drude 项或一个振子。虚频响应 ε(iξ) 对 ξ > 0 为实数、有限且大于 1。
    """

    drude: Optional[DrudeParams] = None
    oscillators: Tuple[LorentzOscillator, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "oscillators", tuple(self.oscillators))
        if self.drude is None and not self.oscillators:
            raise ConfigError("dielectric model needs a Drude term or at least one oscillator")

    @property
    def characteristic_frequency(self) -> float:
        """模型中最大的特征频率，用于判断高频极限"""
        values = []
        if self.drude is not None:
            values += [self.drude.plasma_frequency, self.drude.damping]
        for osc in self.oscillators:
            values += [osc.strength, osc.resonance, osc.damping]
        return max(values)

    def eps_imag_axis(self, xi: npt.ArrayLike) -> FloatArray:
        return eval_imag(self, xi)

    def static_permittivity(self) -> float:
        """ξ → 0 极限；含 Drude 项时发散"""
        if self.drude is not None:
            return float("inf")
        return 1.0 + sum(o.strength**2 / o.resonance**2 for o in self.oscillators)

    def static_tm_reflection(self) -> float:
        """n = 0 项：含 Drude 时 r_TM = 1，否则 (ε₀ − 1)/(ε₀ + 1)"""
        if self.drude is not None:
            return 1.0
        eps0 = self.static_permittivity()
        return (eps0 - 1.0) / (eps0 + 1.0)

    def to_dict(self) -> dict:
        return {
            "drude": self.drude.to_dict() if self.drude is not None else None,
            "oscillators": [o.to_dict() for o in self.oscillators],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DielectricModel":
        drude = data.get("drude")
        return cls(
            drude=DrudeParams.from_dict(drude) if drude else None,
            oscillators=tuple(LorentzOscillator.from_dict(o) for o in data.get("oscillators", [])),
        )


def _check_positive_frequency(values: FloatArray, name: str) -> None:
    if np.any(~np.isfinite(values)) or np.any(values <= 0):
        raise DomainError(f"{name} must be finite and > 0")


def eval_real(model: DielectricModel, omega: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """
    实频复介电常数

    ε(ω) = 1 − ω_p²/(ω(ω + iγ)) + Σ_j Ω_j²/(ω_j² − ω² − iγ_jω)

    Args:
        model: 介电模型
        omega: 实角频率 (rad/s)，必须 > 0

    Returns:
        与 omega 同形状的复数数组，虚部 ≥ 0

    Raises:
        DomainError: ω ≤ 0
    """
    w = np.asarray(omega, dtype=np.float64)
    _check_positive_frequency(w, "omega")
    eps = np.ones(w.shape, dtype=np.complex128)
    if model.drude is not None:
        wp, g = model.drude.plasma_frequency, model.drude.damping
        eps -= wp**2 / (w * (w + 1j * g))
    for osc in model.oscillators:
        eps += osc.strength**2 / (osc.resonance**2 - w**2 - 1j * osc.damping * w)
    return eps


def eval_imag(model: DielectricModel, xi: npt.ArrayLike) -> FloatArray:
    """
    虚频介电函数 ε(iξ) = 1 + ω_p²/(ξ(ξ+γ)) + Σ_j Ω_j²/(ω_j² + ξ² + γ_jξ)

    严格随 ξ 递减并趋于 1。ξ = 0 的静态项由 lifshitz 模块解析处理。

    Raises:
        DomainError: ξ ≤ 0
    """
    x = np.asarray(xi, dtype=np.float64)
    _check_positive_frequency(x, "xi")
    eps = np.ones(x.shape, dtype=np.float64)
    if model.drude is not None:
        wp, g = model.drude.plasma_frequency, model.drude.damping
        eps += wp**2 / (x * (x + g))
    for osc in model.oscillators:
        eps += osc.strength**2 / (osc.resonance**2 + x**2 + osc.damping * x)
    return eps


@dataclass(frozen=True, eq=False)
class SpectrumSample:
    """网格上的实部 ε′ 与虚部 ε″（无量纲）"""

    grid: FrequencyGrid
    eps_real: FloatArray
    eps_imag: FloatArray

    def __post_init__(self):
        eps_real = np.asarray(self.eps_real, dtype=np.float64)
        eps_imag = np.asarray(self.eps_imag, dtype=np.float64)
        n = len(self.grid)
        if eps_real.shape != (n,) or eps_imag.shape != (n,):
            raise InputDataError(
                f"spectrum arrays must match grid length {n}: got {eps_real.shape}, {eps_imag.shape}"
            )
        if np.any(eps_imag < 0):
            raise InputDataError("spectrum violates passivity: eps_imag < 0")
        object.__setattr__(self, "eps_real", eps_real)
        object.__setattr__(self, "eps_imag", eps_imag)

    def as_target(self) -> FloatArray:
        """拼接 [ε′, ε″]，作为回归目标向量"""
        return np.concatenate([self.eps_real, self.eps_imag])

    @classmethod
    def from_target(cls, grid: FrequencyGrid, target: FloatArray) -> "SpectrumSample":
        n = len(grid)
        return cls(grid, target[:n], np.maximum(target[n:], 0.0))


def spectrum_of(model: DielectricModel, grid: FrequencyGrid) -> SpectrumSample:
    """在网格上计算模型的复介电常数"""
    eps = eval_real(model, grid.points)
    # 振子求和在极端参数下可能产生 -0.0 级别的舍入
    return SpectrumSample(grid, eps.real.copy(), np.maximum(eps.imag, 0.0))
