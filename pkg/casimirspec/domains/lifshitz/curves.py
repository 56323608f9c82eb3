"""Force-distance curves."""

import warnings
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
import numpy.typing as npt

from ...core.errors import ConfigError, InputDataError, PfaApplicabilityWarning
from ...core.types import CurveKind, FloatArray, ImaginaryResponse
from .matsubara import MatsubaraSettings, ResponseTable
from .pfa import SphereGeometry, pfa_gradient
from .pressure import pressure

CURVE_KINDS = ("pressure", "gradient")


def check_separations(separations: npt.ArrayLike) -> FloatArray:
    """间距必须为正、有限且严格递增"""
    d = np.asarray(separations, dtype=np.float64)
    if d.ndim != 1 or d.size == 0:
        raise InputDataError("separations must be a non-empty 1-D array")
    if not np.all(np.isfinite(d)) or np.any(d <= 0):
        raise InputDataError("separations must be finite and > 0")
    if np.any(np.diff(d) <= 0):
        raise InputDataError("separations must be strictly increasing")
    return d


@dataclass(frozen=True, eq=False)
class ForceCurve:
    """
    力-距离曲线

    kind = "pressure" 时 values 为平板压强 (Pa)；kind = "gradient" 时为球-平板力梯度 (N/m)。
    uncertainty 仅对分箱后的测量数据存在。
    """

    separations: FloatArray
    values: FloatArray
    kind: CurveKind
    temperature: float
    radius: Optional[float] = None
    uncertainty: Optional[FloatArray] = None

    def __post_init__(self):
        d = check_separations(self.separations)
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != d.shape:
            raise InputDataError(f"curve has {d.size} separations but {v.size} values")
        if not np.all(np.isfinite(v)):
            raise InputDataError("curve values must be finite")
        if self.kind not in CURVE_KINDS:
            raise InputDataError(f"curve kind must be one of {CURVE_KINDS}, got {self.kind!r}")
        if self.kind == "gradient" and (self.radius is None or self.radius <= 0):
            raise InputDataError("gradient curves need a positive sphere radius")
        if self.uncertainty is not None:
            u = np.asarray(self.uncertainty, dtype=np.float64)
            if u.shape != d.shape:
                raise InputDataError("uncertainty length must match separations")
            object.__setattr__(self, "uncertainty", u)
        object.__setattr__(self, "separations", d)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.separations.size

    def restrict(self, d_max: float, d_min: float = 0.0) -> "ForceCurve":
        """只保留 d_min ≤ d ≤ d_max 的点"""
        keep = (self.separations >= d_min) & (self.separations <= d_max)
        if not np.any(keep):
            raise InputDataError(f"no separations within [{d_min!r}, {d_max!r}] m")
        return replace(
            self,
            separations=self.separations[keep],
            values=self.values[keep],
            uncertainty=None if self.uncertainty is None else self.uncertainty[keep],
        )

    def with_values(self, values: FloatArray) -> "ForceCurve":
        return replace(self, values=np.asarray(values, dtype=np.float64))


def force_curve(separations: npt.ArrayLike, mat1: ImaginaryResponse, mat2: ImaginaryResponse,
                settings: Optional[MatsubaraSettings] = None, kind: CurveKind = "pressure",
                geom: Optional[SphereGeometry] = None) -> ForceCurve:
    """
    在每个间距上计算压强或 PFA 力梯度

    结果与求值顺序无关；全部间距共享一张 ε(iξ_n) 表。

    Raises:
        ConfigError: kind 与 geom 不匹配
    """
    d = check_separations(separations)
    settings = settings or MatsubaraSettings()
    if kind not in CURVE_KINDS:
        raise ConfigError(f"curve kind must be one of {CURVE_KINDS}, got {kind!r}")
    if (kind == "gradient") != (geom is not None):
        raise ConfigError("sphere geometry is required for gradient curves and only for them")

    table = ResponseTable(mat1, mat2, settings.temperature)
    if kind == "pressure":
        values = [pressure(di, mat1, mat2, settings, table) for di in d]
        return ForceCurve(d, np.array(values), "pressure", settings.temperature)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PfaApplicabilityWarning)
        values = [pfa_gradient(di, geom, mat1, mat2, settings, table) for di in d]
    if caught:
        # 整条曲线只提示一次
        warnings.warn(f"PFA questionable at {len(caught)} of {d.size} separations",
                      PfaApplicabilityWarning, stacklevel=2)
    return ForceCurve(d, np.array(values), "gradient", settings.temperature, geom.radius)
