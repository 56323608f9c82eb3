"""Coefficient of determination."""

import numpy as np
import numpy.typing as npt

from ...core.errors import InputDataError, UndefinedScoreError


def r2_score(pred: npt.ArrayLike, truth: npt.ArrayLike) -> float:
    """
    按输出维度平均的 R²

    每个维度 R² = 1 − Σ残差² / Σ(truth − 均值)²；真值方差为零的维度跳过。

    Raises:
        InputDataError: 形状不一致或少于 2 行
        UndefinedScoreError: 所有维度方差均为零
    """
    p = np.asarray(pred, dtype=np.float64)
    y = np.asarray(truth, dtype=np.float64)
    if p.ndim == 1:
        p = p[:, np.newaxis]
    if y.ndim == 1:
        y = y[:, np.newaxis]
    if p.shape != y.shape:
        raise InputDataError(f"prediction shape {p.shape} != truth shape {y.shape}")
    if y.shape[0] < 2:
        raise InputDataError("R² needs at least 2 rows")
    ss_tot = np.sum((y - y.mean(axis=0)) ** 2, axis=0)
    keep = ss_tot > 0
    if not np.any(keep):
        raise UndefinedScoreError("R² undefined: every output dimension has zero variance")
    ss_res = np.sum((y - p) ** 2, axis=0)
    return float(np.mean(1.0 - ss_res[keep] / ss_tot[keep]))


def mean_baseline_r2(train_targets: npt.ArrayLike, truth: npt.ArrayLike) -> float:
    """用训练集列均值作预测时的 R²（对照基线）"""
    y = np.asarray(truth, dtype=np.float64)
    baseline = np.broadcast_to(np.asarray(train_targets, dtype=np.float64).mean(axis=0), y.shape)
    return r2_score(baseline, y)
