"""Sensitivity of the reconstruction to the largest separation d_max."""

from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import spearmanr

from ...core.constants import DEFAULT_D_MIN, DEFAULT_VALIDATION_FRACTION
from ...core.errors import ConfigError, InputDataError
from ...utils.logging import log
from ..inversion.forest import fit_forest
from ..inversion.tree import Hyperparams
from ..synth.dataset import Dataset, DatasetSpec, generate_dataset
from ..synth.split import split
from .report import ReconstructionReport, evaluate


@dataclass(frozen=True)
class SweepSpec:
    """同一种子、同一数据集上的 d_max 扫描"""

    base: DatasetSpec = field(default_factory=DatasetSpec)
    d_max: Tuple[float, ...] = (0.5e-6, 1e-6, 2e-6, 5e-6)
    d_min: float = DEFAULT_D_MIN
    seed: int = 42
    validation_fraction: float = DEFAULT_VALIDATION_FRACTION

    def __post_init__(self):
        d_max = tuple(float(x) for x in self.d_max)
        if not d_max:
            raise ConfigError("sweep.d_max_m must not be empty")
        if any(b <= a for a, b in zip(d_max, d_max[1:])):
            raise ConfigError(f"sweep.d_max_m must be strictly increasing, got {list(d_max)}")
        if d_max[0] <= self.d_min:
            raise ConfigError(f"every sweep.d_max_m must exceed d_min={self.d_min!r} m")
        object.__setattr__(self, "d_max", d_max)

    def dataset_spec(self) -> DatasetSpec:
        return replace(self.base, seed=self.seed)


@dataclass(frozen=True)
class SweepLeg:
    d_max: float
    n_separations: int
    report: ReconstructionReport


@dataclass(frozen=True)
class SweepResult:
    legs: Tuple[SweepLeg, ...]

    @property
    def spearman(self) -> Optional[float]:
        """d_max 与平均低频误差的 Spearman 秩相关；少于 2 个点或无秩变化时为 None"""
        if len(self.legs) < 2:
            return None
        errors = [leg.report.mean_low_frequency_error for leg in self.legs]
        if len(set(errors)) == 1:
            return None
        rho = spearmanr([leg.d_max for leg in self.legs], errors)[0]
        return float(rho)

    def table(self) -> List[Tuple[float, float]]:
        return [(leg.d_max, leg.report.mean_low_frequency_error) for leg in self.legs]


def run_leg(dataset: Dataset, d_max: float, d_min: float, hyper: Hyperparams, seed: int,
            workers: Optional[int] = 1) -> SweepLeg:
    """把所有曲线限制到 [d_min, d_max] 后训练并在验证集上评估"""
    train = dataset.train_view().restrict(d_max, d_min)
    validation = dataset.validation_view().restrict(d_max, d_min)
    log(f"d_max={d_max!r} m: {train.separations.size} separations")
    forest = fit_forest(train, hyper, seed, workers)
    report = evaluate(forest, validation, train, seed)
    return SweepLeg(d_max, int(train.separations.size), report)


def dmax_sweep(spec: SweepSpec, hyper: Optional[Hyperparams] = None, workers: Optional[int] = 1,
               dataset: Optional[Dataset] = None) -> SweepResult:
    """
    生成一次数据集，对每个 d_max 训练并评估，结果按 d_max 升序

    Raises:
        InputDataError: 某个 d_max 下没有间距
    """
    hyper = hyper or Hyperparams()
    if dataset is None:
        dataset = split(generate_dataset(spec.dataset_spec(), workers), spec.validation_fraction, spec.seed)
    separations = dataset.spec.separations
    for d_max in spec.d_max:
        if not np.any((separations >= spec.d_min) & (separations <= d_max)):
            raise InputDataError(f"no dataset separations within [{spec.d_min!r}, {d_max!r}] m")
    legs = tuple(run_leg(dataset, d_max, spec.d_min, hyper, spec.seed, workers) for d_max in spec.d_max)
    result = SweepResult(legs)
    log(f"Sweep finished: {result.table()} (spearman={result.spearman})")
    return result


def sweep_rows(result: SweepResult) -> Sequence[tuple]:
    """dmax_sweep.csv 行"""
    rows = []
    for leg in result.legs:
        lo, hi = leg.report.low_frequency_band()
        rows.append((leg.d_max, leg.n_separations, leg.report.mean_low_frequency_error, lo, hi,
                     leg.report.top_decade_imag_error(), leg.report.validation_r2))
    return rows
