"""Common type aliases and protocols."""

from typing import Any, Dict, Literal, Protocol

import numpy as np
import numpy.typing as npt


ConfigDict = Dict[str, Any]
FloatArray = npt.NDArray[np.float64]
CurveKind = Literal["pressure", "gradient"]
Partition = Literal["train", "validation"]


class ImaginaryResponse(Protocol):
    """虚频响应提供者协议：Lifshitz 公式只需要 ε(iξ) 与静态 TM 反射系数"""

    def eps_imag_axis(self, xi: npt.ArrayLike) -> FloatArray:
        """返回 ε(iξ)，要求 ξ > 0"""
        ...

    def static_tm_reflection(self) -> float:
        """返回 n = 0 项的 r_TM（与真空界面）"""
        ...
