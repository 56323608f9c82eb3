"""Measured force-gradient files and uniform binning."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...core.constants import DEFAULT_BINS
from ...core.errors import BinningError, ConfigError, InputDataError
from ...core.types import FloatArray
from ...utils.logging import log
from ..lifshitz.curves import ForceCurve

# 箱宽单位下的边界容差
EDGE_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class MeasuredGradientFile:
    """
    测量的球-平板力梯度

    行在构造时按 d 升序排列（稳定排序）。梯度单位 N/m，符号与正向模型一致（吸引为负）。
    """

    separations: FloatArray
    gradients: FloatArray
    radius: float
    temperature: float
    uncertainty: Optional[FloatArray] = None

    def __post_init__(self):
        d = np.asarray(self.separations, dtype=np.float64).ravel()
        g = np.asarray(self.gradients, dtype=np.float64).ravel()
        if d.size == 0:
            raise InputDataError("measured gradient file has no rows")
        if g.shape != d.shape:
            raise InputDataError("separation and gradient columns differ in length")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(g))):
            raise InputDataError("measured rows must be finite")
        if np.any(d <= 0):
            raise InputDataError("measured separations must be > 0")
        if not np.isfinite(self.radius) or self.radius <= 0:
            raise InputDataError(f"sphere radius must be > 0, got {self.radius!r}")
        if not np.isfinite(self.temperature) or self.temperature <= 0:
            raise InputDataError(f"temperature must be > 0, got {self.temperature!r}")
        order = np.argsort(d, kind="stable")
        object.__setattr__(self, "separations", d[order])
        object.__setattr__(self, "gradients", g[order])
        if self.uncertainty is not None:
            u = np.asarray(self.uncertainty, dtype=np.float64).ravel()
            if u.shape != d.shape or np.any(u < 0) or not np.all(np.isfinite(u)):
                raise InputDataError("uncertainty column must be finite, >= 0 and match the rows")
            object.__setattr__(self, "uncertainty", u[order])

    def __len__(self) -> int:
        return self.separations.size


def bin_measurements(raw: MeasuredGradientFile, n_bins: int = DEFAULT_BINS) -> ForceCurve:
    """
    在 [d_min, d_max] 上等宽分箱，取箱内 d 与梯度的均值

    最后一个箱包含右端点；空箱丢弃。给出逐点不确定度时，箱的不确定度为
    sqrt(Σσ²)/k。

    Raises:
        ConfigError: n_bins < 2
        InputDataError: 行数少于 n_bins
        BinningError: 所有行落在同一个箱内
    """
    if int(n_bins) != n_bins or n_bins < 2:
        raise ConfigError(f"experiment.n_bins must be an integer >= 2, got {n_bins!r}")
    n_bins = int(n_bins)
    if len(raw) < n_bins:
        raise InputDataError(f"need at least {n_bins} rows to form {n_bins} bins, got {len(raw)}")
    d, g = raw.separations, raw.gradients
    width = (d[-1] - d[0]) / n_bins
    if width <= 0:
        raise BinningError(f"all {len(raw)} rows fall into a single bin")
    # 以箱宽为单位计位置，恰在边上的行不受舍入影响
    position = (d - d[0]) / width
    index = np.clip(np.floor(position + EDGE_TOLERANCE).astype(np.intp), 0, n_bins - 1)
    counts = np.bincount(index, minlength=n_bins)
    filled = counts > 0
    if np.count_nonzero(filled) < 2:
        raise BinningError(f"all {len(raw)} rows fall into a single bin")

    k = counts[filled].astype(np.float64)
    d_mean = np.bincount(index, weights=d, minlength=n_bins)[filled] / k
    g_mean = np.bincount(index, weights=g, minlength=n_bins)[filled] / k
    sigma = None
    if raw.uncertainty is not None:
        sigma = np.sqrt(np.bincount(index, weights=raw.uncertainty**2, minlength=n_bins)[filled]) / k
    dropped = n_bins - int(np.count_nonzero(filled))
    log(f"Binned {len(raw)} rows into {n_bins - dropped} bins ({dropped} empty)")
    return ForceCurve(d_mean, g_mean, "gradient", raw.temperature, raw.radius, sigma)
