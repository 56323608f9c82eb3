"""Reconstruction error metrics and reports."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from ...core.constants import BOOTSTRAP_LEVEL, BOOTSTRAP_RESAMPLES
from ...core.errors import InputDataError
from ...core.types import FloatArray
from ..dielectric.grid import FrequencyGrid
from ..dielectric.models import SpectrumSample
from ..inversion.forest import Forest, predict_view
from ..inversion.metrics import mean_baseline_r2, r2_score
from ..synth.split import TrainingSet, ValidationSet

# 自助法随机流
_BOOTSTRAP_STREAM = 3


def _check_pairs(pred: Sequence[SpectrumSample], truth: Sequence[SpectrumSample]) -> FrequencyGrid:
    if len(pred) != len(truth):
        raise InputDataError(f"{len(pred)} predictions vs {len(truth)} reference spectra")
    if not pred:
        raise InputDataError("no spectra to compare")
    grid = truth[0].grid
    if any(s.grid != grid for s in pred) or any(s.grid != grid for s in truth):
        raise InputDataError("predicted and reference spectra must share one frequency grid")
    return grid


def per_frequency_error(pred: Sequence[SpectrumSample],
                        truth: Sequence[SpectrumSample]) -> Tuple[FloatArray, FloatArray]:
    """
    逐频点的平均绝对误差

    Returns:
        (ε′ 误差, ε″ 误差)，长度均为网格点数
    """
    _check_pairs(pred, truth)
    d_real = np.array([np.abs(p.eps_real - t.eps_real) for p, t in zip(pred, truth)])
    d_imag = np.array([np.abs(p.eps_imag - t.eps_imag) for p, t in zip(pred, truth)])
    return d_real.mean(axis=0), d_imag.mean(axis=0)


def low_frequency_error(pred: SpectrumSample, truth: SpectrumSample) -> float:
    """|Δε′(ω_min)|，ω_min 为最低网格点"""
    return float(abs(pred.eps_real[0] - truth.eps_real[0]))


def median_relative_imag_error(pred: SpectrumSample, truth: SpectrumSample,
                               mask: Optional[np.ndarray] = None) -> float:
    """ε″ 相对误差在网格（或 mask 选出的频点）上的中位数；真值为 0 的点不参与"""
    t = truth.eps_imag if mask is None else truth.eps_imag[mask]
    p = pred.eps_imag if mask is None else pred.eps_imag[mask]
    ok = t > 0
    if not np.any(ok):
        return 0.0 if np.array_equal(p, t) else float("inf")
    return float(np.median(np.abs(p[ok] - t[ok]) / t[ok]))


def decade_mask(grid: FrequencyGrid, lowest: bool = True) -> np.ndarray:
    """最低（或最高）一个十倍频程内的网格点"""
    w = grid.points
    if lowest:
        return w <= 10.0 * w[0]
    return w >= w[-1] / 10.0


def bootstrap_band(values: npt.ArrayLike, seed: int, resamples: int = BOOTSTRAP_RESAMPLES,
                   level: float = BOOTSTRAP_LEVEL) -> Tuple[float, float]:
    """均值的自助法百分位区间"""
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise InputDataError("cannot bootstrap an empty sample")
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), _BOOTSTRAP_STREAM]))
    means = v[rng.integers(0, v.size, size=(resamples, v.size))].mean(axis=1)
    alpha = 0.5 * (1.0 - level)
    lo, hi = np.quantile(means, [alpha, 1.0 - alpha])
    return float(lo), float(hi)


@dataclass(frozen=True, eq=False)
class ReconstructionReport:
    """验证集上的重建误差汇总"""

    sample_ids: np.ndarray
    low_frequency_error: FloatArray
    median_relative_imag_error: FloatArray
    mae_real: FloatArray
    mae_imag: FloatArray
    grid: FrequencyGrid
    validation_r2: Optional[float] = None
    baseline_r2: Optional[float] = None
    seed: int = 0

    def __len__(self) -> int:
        return self.sample_ids.size

    @property
    def mean_low_frequency_error(self) -> float:
        return float(np.mean(self.low_frequency_error))

    def low_frequency_band(self) -> Tuple[float, float]:
        return bootstrap_band(self.low_frequency_error, self.seed)

    def top_decade_imag_error(self) -> float:
        return float(np.mean(self.mae_imag[decade_mask(self.grid, lowest=False)]))

    def lowest_decade_real_error(self) -> float:
        return float(np.mean(self.mae_real[decade_mask(self.grid, lowest=True)]))

    def summary_rows(self):
        """report.csv 行：metric, value, band_lo, band_hi"""
        lo, hi = self.low_frequency_band()
        rows = [
            ("n_samples", len(self), "", ""),
            ("mean_low_freq_abs_error_eps_real", self.mean_low_frequency_error, lo, hi),
            ("median_rel_error_eps_imag", float(np.median(self.median_relative_imag_error)), "", ""),
            ("mean_abs_error_eps_real_lowest_decade", self.lowest_decade_real_error(), "", ""),
            ("mean_abs_error_eps_imag_top_decade", self.top_decade_imag_error(), "", ""),
        ]
        if self.validation_r2 is not None:
            rows.append(("validation_r2_transformed", self.validation_r2, "", ""))
        if self.baseline_r2 is not None:
            rows.append(("baseline_r2_transformed", self.baseline_r2, "", ""))
        return rows


def build_report(pred: Sequence[SpectrumSample], truth: Sequence[SpectrumSample],
                 sample_ids: Optional[npt.ArrayLike] = None, validation_r2: Optional[float] = None,
                 baseline_r2: Optional[float] = None, seed: int = 0) -> ReconstructionReport:
    grid = _check_pairs(pred, truth)
    mae_real, mae_imag = per_frequency_error(pred, truth)
    ids = np.arange(len(pred)) if sample_ids is None else np.asarray(sample_ids, dtype=np.int64)
    return ReconstructionReport(
        sample_ids=ids,
        low_frequency_error=np.array([low_frequency_error(p, t) for p, t in zip(pred, truth)]),
        median_relative_imag_error=np.array([median_relative_imag_error(p, t) for p, t in zip(pred, truth)]),
        mae_real=mae_real,
        mae_imag=mae_imag,
        grid=grid,
        validation_r2=validation_r2,
        baseline_r2=baseline_r2,
        seed=seed,
    )


def evaluate(forest: Forest, validation: ValidationSet, train: Optional[TrainingSet] = None,
             seed: int = 0) -> ReconstructionReport:
    """在验证划分上评估森林；R² 在变换后的目标空间计算"""
    pred_targets = predict_view(forest, validation)
    pred = [SpectrumSample.from_target(forest.grid, row) for row in pred_targets]
    truth = list(validation.spectra())
    r2 = baseline = None
    if len(validation) >= 2:
        truth_t = forest.target_transform.forward(validation.targets)
        r2 = r2_score(forest.target_transform.forward(pred_targets), truth_t)
        if train is not None:
            baseline = mean_baseline_r2(forest.target_transform.forward(train.targets), truth_t)
    return build_report(pred, truth, validation.sample_ids, r2, baseline, seed)
