"""Train/validation partitioning and partition views."""

from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from ...core.errors import ConfigError, InputDataError
from ...core.types import CurveKind, FloatArray, Partition
from ...utils.logging import log
from ..dielectric.grid import FrequencyGrid
from ..dielectric.models import SpectrumSample
from ..lifshitz.curves import ForceCurve, check_separations
from .dataset import Dataset

# 划分使用独立于样本生成的随机流
_SPLIT_STREAM = 1


def validation_count(n: int, validation_fraction: float) -> int:
    """round-half-up(f·n)"""
    return int(np.floor(validation_fraction * n + 0.5))


def split(dataset: Dataset, validation_fraction: float, seed: int) -> Dataset:
    """
    随机划分训练/验证集，结果只由 (seed, 样本 id 集合) 决定

    Raises:
        ConfigError: fraction 不在 (0, 1) 内，或任一划分为空
    """
    if not 0.0 < validation_fraction < 1.0:
        raise ConfigError(f"split.validation_fraction must lie in (0, 1), got {validation_fraction!r}")
    n = len(dataset)
    n_val = validation_count(n, validation_fraction)
    if n_val == 0 or n_val == n:
        raise ConfigError(
            f"split.validation_fraction={validation_fraction!r} leaves an empty partition for {n} samples"
        )
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), _SPLIT_STREAM]))
    chosen = rng.permutation(n)[:n_val]
    labels = np.full(n, "train", dtype=object)
    labels[chosen] = "validation"
    log(f"Split {n} samples: {n - n_val} train, {n_val} validation")
    return replace(dataset, split=tuple(str(x) for x in labels))


@dataclass(frozen=True, eq=False)
class PartitionView:
    """
    某一划分的矩阵视图

    features 每行为一条力曲线（按 separations 排列），targets 每行为拼接的 [ε′, ε″]。
    行按 sample_id 升序排列。
    """

    separations: FloatArray
    grid: FrequencyGrid
    kind: CurveKind
    temperature: float
    sample_ids: np.ndarray
    features: FloatArray
    targets: FloatArray
    radius: Optional[float] = None

    name: Partition = "train"

    def __post_init__(self):
        d = check_separations(self.separations)
        ids = np.asarray(self.sample_ids, dtype=np.int64)
        x = np.asarray(self.features, dtype=np.float64)
        y = np.asarray(self.targets, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != d.size:
            raise InputDataError(f"features must have {d.size} columns, got shape {x.shape}")
        if y.ndim != 2 or y.shape[1] != 2 * len(self.grid):
            raise InputDataError(f"targets must have {2 * len(self.grid)} columns, got shape {y.shape}")
        if not x.shape[0] == y.shape[0] == ids.size:
            raise InputDataError("features, targets and sample ids must have the same number of rows")
        if ids.size > 1 and np.any(np.diff(ids) <= 0):
            order = np.argsort(ids, kind="stable")
            ids, x, y = ids[order], x[order], y[order]
            if np.any(np.diff(ids) == 0):
                raise InputDataError("sample ids must be unique")
        object.__setattr__(self, "separations", d)
        object.__setattr__(self, "sample_ids", ids)
        object.__setattr__(self, "features", x)
        object.__setattr__(self, "targets", y)

    def __len__(self) -> int:
        return self.sample_ids.size

    @classmethod
    def from_dataset(cls, dataset: Dataset):
        if dataset.split is None:
            raise ConfigError("dataset has no train/validation split")
        picked = [s for s, label in zip(dataset.samples, dataset.split) if label == cls.name]
        spec = dataset.spec
        n_grid = len(spec.grid)
        return cls(
            separations=spec.separations,
            grid=spec.grid,
            kind=spec.curve_kind,
            temperature=spec.temperature,
            sample_ids=np.array([s.sample_id for s in picked], dtype=np.int64),
            features=np.array([s.curve.values for s in picked]).reshape(len(picked), spec.separations.size),
            targets=np.array([s.spectrum.as_target() for s in picked]).reshape(len(picked), 2 * n_grid),
            radius=spec.sphere_radius if spec.curve_kind == "gradient" else None,
        )

    def restrict(self, d_max: float, d_min: float = 0.0):
        """只保留 d_min ≤ d ≤ d_max 的特征列"""
        keep = (self.separations >= d_min) & (self.separations <= d_max)
        if not np.any(keep):
            raise InputDataError(f"no separations within [{d_min!r}, {d_max!r}] m")
        return replace(self, separations=self.separations[keep], features=self.features[:, keep])

    def subset(self, rows: np.ndarray):
        rows = np.sort(np.asarray(rows, dtype=np.int64))
        return replace(self, sample_ids=self.sample_ids[rows],
                       features=self.features[rows], targets=self.targets[rows])

    def curve(self, row: int) -> ForceCurve:
        return ForceCurve(self.separations, self.features[row], self.kind, self.temperature, self.radius)

    def spectrum(self, row: int) -> SpectrumSample:
        return SpectrumSample.from_target(self.grid, self.targets[row])

    def spectra(self) -> Tuple[SpectrumSample, ...]:
        return tuple(self.spectrum(i) for i in range(len(self)))


@dataclass(frozen=True, eq=False)
class TrainingSet(PartitionView):
    """训练划分；训练函数只接受此类型"""

    name: Partition = "train"


@dataclass(frozen=True, eq=False)
class ValidationSet(PartitionView):
    """验证划分，从不参与训练"""

    name: Partition = "validation"
