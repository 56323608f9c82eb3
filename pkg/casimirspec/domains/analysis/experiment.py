"""Reconstruction from measured (or synthesised) sphere-plate force gradients."""

from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
import numpy.typing as npt

from ...core.constants import DEFAULT_BINS, DEFAULT_VALIDATION_FRACTION
from ...core.errors import ConfigError, InputDataError
from ...utils.logging import log
from ..dielectric.materials import Material, resolve_material
from ..dielectric.models import DielectricModel, SpectrumSample, spectrum_of
from ..inversion.forest import Forest, fit_forest, predict
from ..inversion.tree import Hyperparams
from ..lifshitz.curves import ForceCurve, force_curve
from ..lifshitz.matsubara import MatsubaraSettings
from ..lifshitz.pfa import SphereGeometry
from ..synth.dataset import Dataset, DatasetSpec, generate_dataset
from ..synth.split import split
from .binning import MeasuredGradientFile, bin_measurements
from .noise import add_relative_noise
from .report import ReconstructionReport, build_report, decade_mask, evaluate, median_relative_imag_error

# 合成测量噪声的随机流
_NOISE_STREAM = 4

MaterialSpec = Union[str, Dict[str, Any], Material]


def synthesize_measurement(material: MaterialSpec, separations: npt.ArrayLike, radius: float,
                           temperature: float, sensing_surface: MaterialSpec = "gold_drude",
                           noise: float = 0.0, seed: int = 0, oversample: int = 1,
                           settings: Optional[MatsubaraSettings] = None) -> MeasuredGradientFile:
    """
    用正向模型合成一份测量文件（模拟对照）

    oversample > 1 时在同一区间内加密采样，便于之后分箱。噪声为相对高斯噪声，
    此时 sigma 列记录 noise·|F′|。
    """
    d = np.asarray(separations, dtype=np.float64)
    if int(oversample) != oversample or oversample < 1:
        raise ConfigError(f"oversample must be an integer >= 1, got {oversample!r}")
    if oversample > 1:
        d = np.linspace(d[0], d[-1], int(oversample) * d.size)
    settings = replace(settings, temperature=temperature) if settings else MatsubaraSettings(temperature)
    clean = force_curve(d, resolve_material(sensing_surface), resolve_material(material), settings,
                        "gradient", SphereGeometry(radius))
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), _NOISE_STREAM]))
    noisy = add_relative_noise(clean, noise, rng)
    sigma = noise * np.abs(clean.values) if noise > 0 else None
    log(f"Synthesised {d.size} gradient rows (noise={noise!r})")
    return MeasuredGradientFile(noisy.separations, noisy.values, radius, temperature, sigma)


def train_and_validate(spec: DatasetSpec, hyper: Hyperparams, validation_fraction: float,
                       workers: Optional[int] = 1) -> Tuple[Dataset, Forest, ReconstructionReport]:
    """生成、划分、训练，并在验证划分上评估"""
    dataset = split(generate_dataset(spec, workers), validation_fraction, spec.seed)
    train = dataset.train_view()
    forest = fit_forest(train, hyper, spec.seed, workers, dataset_hash=spec.spec_hash())
    report = evaluate(forest, dataset.validation_view(), train, spec.seed)
    return dataset, forest, report


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    curve: ForceCurve
    spectrum: SpectrumSample
    validation: ReconstructionReport
    reference: Optional[SpectrumSample] = None
    reference_report: Optional[ReconstructionReport] = None

    def lowest_decade_imag_error(self) -> Optional[float]:
        """最低十倍频程内 ε″ 相对误差的中位数（需要参考谱）"""
        if self.reference is None:
            return None
        mask = decade_mask(self.spectrum.grid, lowest=True)
        return median_relative_imag_error(self.spectrum, self.reference, mask)

    def mean_real_error(self) -> Optional[float]:
        if self.reference is None:
            return None
        return float(np.mean(np.abs(self.spectrum.eps_real - self.reference.eps_real)))


def reconstruct_experiment(measured: MeasuredGradientFile, n_bins: int = DEFAULT_BINS,
                           base: Optional[DatasetSpec] = None, hyper: Optional[Hyperparams] = None,
                           validation_fraction: float = DEFAULT_VALIDATION_FRACTION,
                           reference: Optional[Union[SpectrumSample, DielectricModel]] = None,
                           workers: Optional[int] = 1) -> ExperimentResult:
    """
    分箱、在分箱间距上生成训练集并训练、再重建测量样品

    训练曲线为测量半径与温度下的 PFA 梯度，间距恰为分箱后的间距。给出参考谱时
    额外报告重建误差。

    Raises:
        InputDataError: 分箱后不足 2 个间距
    """
    curve = bin_measurements(measured, n_bins)
    if len(curve) < 2:
        raise InputDataError("separation coverage is narrower than 2 bins")
    base = base or DatasetSpec()
    spec = replace(base, separations=curve.separations, curve_kind="gradient",
                   sphere_radius=measured.radius, temperature=measured.temperature)
    log(f"Training on {len(curve)} binned separations "
        f"({curve.separations[0]!r}-{curve.separations[-1]!r} m, R={measured.radius!r} m)")
    _, forest, validation = train_and_validate(spec, hyper or Hyperparams(), validation_fraction, workers)
    spectrum = predict(forest, curve)

    ref_spectrum = ref_report = None
    if reference is not None:
        ref_spectrum = spectrum_of(reference, spec.grid) if isinstance(reference, DielectricModel) else reference
        ref_report = build_report([spectrum], [ref_spectrum], seed=spec.seed)
    return ExperimentResult(curve, spectrum, validation, ref_spectrum, ref_report)
