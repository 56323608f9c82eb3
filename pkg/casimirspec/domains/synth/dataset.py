"""Dataset specification and generation."""

import hashlib
import json
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from ...core.constants import (
    DEFAULT_D_MAX,
    DEFAULT_D_MIN,
    DEFAULT_N_SAMPLES,
    DEFAULT_QUADRATURE_TOLERANCE,
    DEFAULT_SEPARATIONS,
    DEFAULT_TEMPERATURE,
    DEFAULT_TERM_TOLERANCE,
    MAX_FAILED_FRACTION,
)
from ...core.errors import ConfigError, NumericalError
from ...core.types import CurveKind, FloatArray, Partition
from ...utils.logging import log
from ...utils.parallel import parallel_map
from ..dielectric.grid import FrequencyGrid, default_grid
from ..dielectric.materials import resolve_material
from ..dielectric.models import DielectricModel, SpectrumSample, spectrum_of
from ..lifshitz.curves import CURVE_KINDS, ForceCurve, check_separations, force_curve
from ..lifshitz.matsubara import MatsubaraSettings
from ..lifshitz.pfa import SphereGeometry
from .sampling import SamplingRanges, sample_model


def default_separations(d_min: float = DEFAULT_D_MIN, d_max: float = DEFAULT_D_MAX,
                        n_points: int = DEFAULT_SEPARATIONS) -> FloatArray:
    """均匀间距：默认 40 nm - 5 µm 共 64 点"""
    if not 0 < d_min < d_max or n_points < 1:
        raise ConfigError(f"invalid separations: d_min={d_min}, d_max={d_max}, n={n_points}")
    return np.linspace(d_min, d_max, int(n_points))


@dataclass(frozen=True, eq=False)
class DatasetSpec:
    """数据集规格；seed 决定全部随机性"""

    n_samples: int = DEFAULT_N_SAMPLES
    separations: FloatArray = field(default_factory=default_separations)
    grid: FrequencyGrid = field(default_factory=default_grid)
    ranges: SamplingRanges = field(default_factory=SamplingRanges.drude_only)
    temperature: float = DEFAULT_TEMPERATURE
    curve_kind: CurveKind = "pressure"
    sphere_radius: Optional[float] = None
    seed: int = 42
    sensing_surface: Union[str, Dict[str, Any]] = "gold_drude"
    term_tolerance: float = DEFAULT_TERM_TOLERANCE
    quadrature_tolerance: float = DEFAULT_QUADRATURE_TOLERANCE

    def __post_init__(self):
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise ConfigError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        object.__setattr__(self, "separations", check_separations(self.separations))
        if self.curve_kind not in CURVE_KINDS:
            raise ConfigError(f"curve_kind must be one of {CURVE_KINDS}, got {self.curve_kind!r}")
        if self.curve_kind == "gradient" and self.sphere_radius is None:
            raise ConfigError("curve_kind 'gradient' requires sphere_radius")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        # 提前检查，避免在工作进程里才失败
        self.settings()
        self.geometry()

    def settings(self) -> MatsubaraSettings:
        return MatsubaraSettings(self.temperature, self.term_tolerance, self.quadrature_tolerance)

    def geometry(self) -> Optional[SphereGeometry]:
        if self.curve_kind != "gradient":
            return None
        return SphereGeometry(float(self.sphere_radius))

    def with_separations(self, separations: FloatArray) -> "DatasetSpec":
        return replace(self, separations=np.asarray(separations, dtype=np.float64))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_samples": int(self.n_samples),
            "separations": [float(d) for d in self.separations],
            "grid": self.grid.to_dict(),
            "ranges": self.ranges.to_dict(),
            "temperature": float(self.temperature),
            "curve_kind": self.curve_kind,
            "sphere_radius": None if self.sphere_radius is None else float(self.sphere_radius),
            "seed": int(self.seed),
            "sensing_surface": self.sensing_surface,
            "term_tolerance": self.term_tolerance,
            "quadrature_tolerance": self.quadrature_tolerance,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DatasetSpec":
        try:
            return cls(
                n_samples=int(data["n_samples"]),
                separations=np.asarray(data["separations"], dtype=np.float64),
                grid=FrequencyGrid.from_dict(data["grid"]),
                ranges=SamplingRanges.from_dict(data["ranges"]),
                temperature=float(data["temperature"]),
                curve_kind=data["curve_kind"],
                sphere_radius=data.get("sphere_radius"),
                seed=int(data["seed"]),
                sensing_surface=data.get("sensing_surface", "gold_drude"),
                term_tolerance=float(data.get("term_tolerance", DEFAULT_TERM_TOLERANCE)),
                quadrature_tolerance=float(data.get("quadrature_tolerance", DEFAULT_QUADRATURE_TOLERANCE)),
            )
        except KeyError as e:
            raise ConfigError(f"dataset spec missing key {e}")

    def spec_hash(self) -> str:
        """规格的 SHA-256（规范化 JSON）"""
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True, eq=False)
class DatasetSample:
    sample_id: int
    model: DielectricModel
    spectrum: SpectrumSample
    curve: ForceCurve


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    样本集合；split 与 samples 一一对应，未划分时为 None

    所有曲线共享 spec.separations，所有谱共享 spec.grid。
    """

    spec: DatasetSpec
    samples: Tuple[DatasetSample, ...]
    split: Optional[Tuple[Partition, ...]] = None

    def __post_init__(self):
        samples = tuple(sorted(self.samples, key=lambda s: s.sample_id))
        object.__setattr__(self, "samples", samples)
        if self.split is not None and len(self.split) != len(samples):
            raise ConfigError("split labels must cover every sample")
        for s in samples:
            if not np.array_equal(s.curve.separations, self.spec.separations):
                raise ConfigError(f"sample {s.sample_id} curve does not share the dataset separations")
            if s.spectrum.grid != self.spec.grid:
                raise ConfigError(f"sample {s.sample_id} spectrum does not share the dataset grid")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def sample_ids(self) -> List[int]:
        return [s.sample_id for s in self.samples]

    def train_view(self):
        from .split import TrainingSet
        return TrainingSet.from_dataset(self)

    def validation_view(self):
        from .split import ValidationSet
        return ValidationSet.from_dataset(self)


def _sample_rng(seed: int, index: int) -> np.random.Generator:
    """每个样本独立的随机流，由 (seed, index) 决定，与调度顺序无关"""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def generate_sample(spec: DatasetSpec, index: int) -> Optional[DatasetSample]:
    """
    生成单个样本；数值失败时记录日志并返回 None

    感应面在前、样品在后（压强对材料交换精确对称）。
    """
    rng = _sample_rng(spec.seed, index)
    model = sample_model(rng, spec.ranges)
    spectrum = spectrum_of(model, spec.grid)
    sensing = resolve_material(spec.sensing_surface)
    try:
        curve = force_curve(spec.separations, sensing, model, spec.settings(),
                            spec.curve_kind, spec.geometry())
    except NumericalError as e:
        log(f"Sample {index} failed: {e}")
        return None
    return DatasetSample(index, model, spectrum, curve)


def _generate_task(args: Tuple[DatasetSpec, int]) -> Optional[DatasetSample]:
    spec, index = args
    return generate_sample(spec, index)


def generate_dataset(spec: DatasetSpec, workers: Optional[int] = 1) -> Dataset:
    """
    按规格生成数据集（未划分）

    结果与 workers 无关。失败样本超过 1% 时整体中止。

    Raises:
        NumericalError: 失败比例超过 1%
    """
    log(f"Generating {spec.n_samples} samples over {spec.separations.size} separations "
        f"(kind={spec.curve_kind}, T={spec.temperature} K, seed={spec.seed})")
    results = parallel_map(_generate_task, [(spec, i) for i in range(spec.n_samples)], workers)
    samples = tuple(s for s in results if s is not None)
    failed = spec.n_samples - len(samples)
    if failed:
        log(f"{failed} of {spec.n_samples} samples failed")
    if failed > MAX_FAILED_FRACTION * spec.n_samples:
        raise NumericalError(f"{failed} of {spec.n_samples} samples failed (limit 1%)")
    log(f"Generated {len(samples)} samples")
    return Dataset(spec, samples)
