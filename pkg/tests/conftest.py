"""Shared fixtures: small grids, gold-like Drude surfaces and loose Matsubara settings."""

import os

import numpy as np
import pytest

from casimirspec.utils.paths import HOME_ENV
from casimirspec.domains.dielectric.grid import FrequencyGrid
from casimirspec.domains.dielectric.materials import gold_drude
from casimirspec.domains.dielectric.models import spectrum_of
from casimirspec.domains.lifshitz.curves import ForceCurve
from casimirspec.domains.lifshitz.matsubara import MatsubaraSettings
from casimirspec.domains.synth.dataset import Dataset, DatasetSample, DatasetSpec
from casimirspec.domains.synth.sampling import SamplingRanges, sample_model


@pytest.fixture(scope="session", autouse=True)
def _user_data_dir(tmp_path_factory):
    """日志写到临时目录，不碰用户主目录"""
    os.environ[HOME_ENV] = str(tmp_path_factory.mktemp("home"))
    yield
    os.environ.pop(HOME_ENV, None)


@pytest.fixture
def gold():
    return gold_drude()


@pytest.fixture
def small_grid():
    return FrequencyGrid.logspace(1e13, 1e17, 12)


@pytest.fixture
def fast_settings():
    return MatsubaraSettings(300.0, 1e-6, 1e-6)


@pytest.fixture
def tiny_spec(small_grid):
    """30 个纯 Drude 样本、6 个间距，几秒内可生成"""
    return DatasetSpec(
        n_samples=30,
        separations=np.linspace(100e-9, 1e-6, 6),
        grid=small_grid,
        ranges=SamplingRanges.drude_only(),
        seed=7,
        term_tolerance=1e-6,
        quadrature_tolerance=1e-6,
    )


def make_fake_dataset(n: int, grid: FrequencyGrid, n_separations: int = 4, seed: int = 0) -> Dataset:
    """
    不做 Lifshitz 计算的数据集：曲线值取 -ω_p²/d⁴ 形式的单调函数，只用于划分与训练管线测试
    """
    rng = np.random.default_rng(seed)
    separations = np.linspace(100e-9, 1e-6, n_separations)
    spec = DatasetSpec(n_samples=n, separations=separations, grid=grid,
                       ranges=SamplingRanges.drude_only(), seed=seed)
    samples = []
    for i in range(n):
        model = sample_model(rng, spec.ranges)
        wp = model.drude.plasma_frequency
        values = -(wp / 1e16) ** 2 * (100e-9 / separations) ** 4
        curve = ForceCurve(separations, values, "pressure", 300.0)
        samples.append(DatasetSample(i, model, spectrum_of(model, grid), curve))
    return Dataset(spec, tuple(samples))


@pytest.fixture
def fake_dataset(small_grid):
    return make_fake_dataset(60, small_grid)

