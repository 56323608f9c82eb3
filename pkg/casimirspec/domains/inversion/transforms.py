"""Signed-log feature and target transforms."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ...core.errors import InputDataError
from ...core.types import FloatArray

_LN10 = np.log(10.0)


@dataclass(frozen=True, eq=False)
class SignedLogTransform:
    """
    x ↦ sign(x)·log10(1 + |x|/s)，每列一个尺度 s

    s 取训练集该列 |x| 的中位数；中位数为 0 时退回 1。
    """

    scales: FloatArray

    def __post_init__(self):
        s = np.asarray(self.scales, dtype=np.float64)
        if s.ndim != 1 or s.size == 0 or not np.all(np.isfinite(s)) or np.any(s <= 0):
            raise InputDataError("transform scales must be a non-empty array of finite values > 0")
        object.__setattr__(self, "scales", s)

    @classmethod
    def fit(cls, x: npt.ArrayLike) -> "SignedLogTransform":
        a = np.abs(np.asarray(x, dtype=np.float64))
        if a.ndim != 2 or a.shape[0] == 0:
            raise InputDataError("cannot fit a transform on an empty matrix")
        s = np.median(a, axis=0)
        s[~(s > 0) | ~np.isfinite(s)] = 1.0
        return cls(s)

    def _check(self, x: FloatArray) -> None:
        if x.shape[-1] != self.scales.size:
            raise InputDataError(f"expected {self.scales.size} columns, got {x.shape[-1]}")

    def forward(self, x: npt.ArrayLike) -> FloatArray:
        x = np.asarray(x, dtype=np.float64)
        self._check(x)
        return np.sign(x) * np.log1p(np.abs(x) / self.scales) / _LN10

    def inverse(self, z: npt.ArrayLike) -> FloatArray:
        z = np.asarray(z, dtype=np.float64)
        self._check(z)
        return np.sign(z) * self.scales * np.expm1(np.abs(z) * _LN10)

    def to_dict(self) -> dict:
        return {"kind": "signed-log", "scales": [float(s) for s in self.scales]}

    @classmethod
    def from_dict(cls, data: dict) -> "SignedLogTransform":
        if data.get("kind") != "signed-log":
            raise InputDataError(f"unsupported transform kind {data.get('kind')!r}")
        return cls(np.asarray(data["scales"], dtype=np.float64))


# 特征与目标共用同一变换族；目标的 ε′、ε″ 通道各列独立定标
FeatureTransform = SignedLogTransform
TargetTransform = SignedLogTransform
