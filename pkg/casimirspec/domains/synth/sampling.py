"""Random sampling of physically motivated Drude-Lorentz models."""

from dataclasses import asdict, dataclass
from typing import Tuple

import numpy as np

from ...core.errors import ConfigError
from ..dielectric.models import DielectricModel, DrudeParams, LorentzOscillator

Range = Tuple[float, float]


@dataclass(frozen=True)
class SamplingRanges:
    """
    采样范围（频率均为 log10(rad/s)）

    默认值覆盖真实金属（Au 的 ω_p ≈ 1.37e16 rad/s）与带间跃迁特征。
    """

    p_drude: float = 0.9
    log10_plasma_frequency: Range = (15.0, 16.5)
    log10_damping: Range = (13.0, 14.5)
    n_oscillators: Tuple[int, int] = (0, 4)
    log10_strength: Range = (14.5, 16.5)
    log10_resonance: Range = (14.5, 17.0)
    log10_oscillator_damping: Range = (13.5, 15.5)

    def __post_init__(self):
        if not 0.0 <= self.p_drude <= 1.0:
            raise ConfigError(f"p_drude must lie in [0, 1], got {self.p_drude!r}")
        for name in ("log10_plasma_frequency", "log10_damping", "log10_strength",
                     "log10_resonance", "log10_oscillator_damping"):
            lo, hi = getattr(self, name)
            if not (np.isfinite(lo) and np.isfinite(hi)) or lo > hi:
                raise ConfigError(f"sampling range {name} must satisfy min <= max, got [{lo}, {hi}]")
            object.__setattr__(self, name, (float(lo), float(hi)))
        n_lo, n_hi = self.n_oscillators
        if int(n_lo) != n_lo or int(n_hi) != n_hi or n_lo < 0 or n_lo > n_hi:
            raise ConfigError(f"n_oscillators must be integers 0 <= min <= max, got {self.n_oscillators}")
        object.__setattr__(self, "n_oscillators", (int(n_lo), int(n_hi)))
        if self.p_drude < 1.0 and n_hi == 0:
            # 没有 Drude 项的样本至少需要一个振子
            raise ConfigError(f"sampling ranges produce empty models (p_drude={self.p_drude!r} < 1 with N_max=0)")

    @classmethod
    def drude_only(cls) -> "SamplingRanges":
        """纯 Drude 研究：必含 Drude 项，无振子"""
        return cls(p_drude=1.0, n_oscillators=(0, 0))

    @classmethod
    def drude_lorentz(cls) -> "SamplingRanges":
        return cls()

    def to_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}

    @classmethod
    def from_dict(cls, data: dict) -> "SamplingRanges":
        try:
            return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in data.items()})
        except TypeError as e:
            raise ConfigError(f"invalid sampling ranges: {e}")


def _log_uniform(rng: np.random.Generator, bounds: Range) -> float:
    lo, hi = bounds
    return float(10.0 ** rng.uniform(lo, hi))


def sample_model(rng: np.random.Generator, ranges: SamplingRanges) -> DielectricModel:
    """
    抽取一个介电模型，完全由 rng 状态决定

    Drude 项以概率 p_drude 出现；没有 Drude 项时振子数至少为 1，保证模型非空。
    """
    has_drude = bool(rng.random() < ranges.p_drude)
    drude = None
    if has_drude:
        drude = DrudeParams(_log_uniform(rng, ranges.log10_plasma_frequency),
                            _log_uniform(rng, ranges.log10_damping))
    n_lo, n_hi = ranges.n_oscillators
    if not has_drude:
        n_lo = max(1, n_lo)
    n_osc = int(rng.integers(n_lo, n_hi + 1))
    oscillators = tuple(
        LorentzOscillator(
            _log_uniform(rng, ranges.log10_strength),
            _log_uniform(rng, ranges.log10_resonance),
            _log_uniform(rng, ranges.log10_oscillator_damping),
        )
        for _ in range(n_osc)
    )
    return DielectricModel(drude, oscillators)
