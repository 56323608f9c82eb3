"""Bagged random forest over force-curve features."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np
import numpy.typing as npt

from ...core.errors import InputDataError
from ...core.types import CurveKind, FloatArray
from ...utils.logging import log
from ...utils.parallel import parallel_map
from ..dielectric.grid import FrequencyGrid
from ..dielectric.models import SpectrumSample
from ..lifshitz.curves import ForceCurve
from ..synth.split import PartitionView, TrainingSet
from .transforms import FeatureTransform, TargetTransform
from .tree import Hyperparams, Tree, fit_tree


@dataclass(frozen=True, eq=False)
class Forest:
    """
    训练好的森林：n_ensembles 组、每组 n_trees 棵树

    预测为全部树在变换空间中的算术平均，再做目标逆变换。对象不可变，可跨线程共享。
    """

    ensembles: Tuple[Tuple[Tree, ...], ...]
    hyper: Hyperparams
    feature_transform: FeatureTransform
    target_transform: TargetTransform
    separations: FloatArray
    grid: FrequencyGrid
    kind: CurveKind
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        trees = [t for ensemble in self.ensembles for t in ensemble]
        if not trees:
            raise InputDataError("forest has no trees")
        n_out = 2 * len(self.grid)
        if any(t.n_outputs != n_out for t in trees):
            raise InputDataError(f"every tree must predict {n_out} outputs")
        if self.feature_transform.scales.size != np.asarray(self.separations).size:
            raise InputDataError("feature transform does not match the training separations")
        object.__setattr__(self, "separations", np.asarray(self.separations, dtype=np.float64))

    @property
    def n_trees(self) -> int:
        return sum(len(e) for e in self.ensembles)

    def trees(self) -> Tuple[Tree, ...]:
        return tuple(t for ensemble in self.ensembles for t in ensemble)

    def predict_transformed(self, features: npt.ArrayLike) -> FloatArray:
        """原始特征矩阵 -> 变换空间中的预测均值"""
        z = self.feature_transform.forward(np.atleast_2d(np.asarray(features, dtype=np.float64)))
        total = np.zeros((z.shape[0], 2 * len(self.grid)))
        for tree in self.trees():
            total += tree.predict(z)
        return total / self.n_trees

    def predict_targets(self, features: npt.ArrayLike) -> FloatArray:
        return self.target_transform.inverse(self.predict_transformed(features))

    def check_separations(self, separations: npt.ArrayLike) -> None:
        """
        Raises:
            InputDataError: 间距与训练间距不完全一致，消息给出第一个不同的间距
        """
        d = np.asarray(separations, dtype=np.float64)
        n = min(d.size, self.separations.size)
        diff = np.nonzero(d[:n] != self.separations[:n])[0]
        if diff.size:
            i = int(diff[0])
            raise InputDataError(
                f"separation mismatch at index {i}: curve has d={d[i]!r} m, "
                f"model was trained on d={self.separations[i]!r} m"
            )
        if d.size != self.separations.size:
            longer, which = (d, "curve") if d.size > n else (self.separations, "model")
            raise InputDataError(
                f"separation mismatch at index {n}: {which} has extra separation d={longer[n]!r} m "
                f"({d.size} vs {self.separations.size} points)"
            )


def predict(forest: Forest, curve: ForceCurve) -> SpectrumSample:
    """
    由力曲线重建复介电谱，结果位于训练时的频率网格上

    Raises:
        InputDataError: 间距或曲线类型与训练数据不一致
    """
    forest.check_separations(curve.separations)
    if curve.kind != forest.kind:
        raise InputDataError(f"curve kind {curve.kind!r} does not match model kind {forest.kind!r}")
    target = forest.predict_targets(curve.values[np.newaxis, :])[0]
    return SpectrumSample.from_target(forest.grid, target)


def predict_view(forest: Forest, view: PartitionView) -> FloatArray:
    """整个划分的批量预测（原始目标空间）"""
    forest.check_separations(view.separations)
    return forest.predict_targets(view.features)


def _tree_seed(seed: int, ensemble: int, tree: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(seed), int(ensemble), int(tree)])


def _fit_task(args) -> Tree:
    z, t, hyper, seed, ensemble, index = args
    rng = np.random.default_rng(_tree_seed(seed, ensemble, index))
    if hyper.bootstrap:
        rows = rng.integers(0, z.shape[0], size=z.shape[0])
        return fit_tree(z[rows], t[rows], hyper, rng)
    return fit_tree(z, t, hyper, rng)


def fit_forest(train: TrainingSet, hyper: Optional[Hyperparams] = None, seed: int = 0,
               workers: Optional[int] = 1, dataset_hash: Optional[str] = None) -> Forest:
    """
    在训练划分上拟合变换与森林

    每棵树的随机流由 (seed, 组号, 树号) 决定，行按 sample_id 排序，因此结果与
    workers 及输入行顺序无关。

    Raises:
        TypeError: 传入的不是训练划分
        InputDataError: 训练样本少于 2 个
    """
    if not isinstance(train, TrainingSet):
        raise TypeError(f"fit_forest accepts only a TrainingSet, got {type(train).__name__}")
    if len(train) < 2:
        raise InputDataError(f"need at least 2 training samples, got {len(train)}")
    hyper = hyper or Hyperparams()

    feature_transform = FeatureTransform.fit(train.features)
    target_transform = TargetTransform.fit(train.targets)
    z = feature_transform.forward(train.features)
    t = target_transform.forward(train.targets)

    log(f"Fitting {hyper.n_ensembles}x{hyper.n_trees} trees on {len(train)} samples "
        f"({train.separations.size} features)")
    tasks = [(z, t, hyper, seed, e, i) for e in range(hyper.n_ensembles) for i in range(hyper.n_trees)]
    trees = parallel_map(_fit_task, tasks, workers)
    ensembles = tuple(
        tuple(trees[e * hyper.n_trees:(e + 1) * hyper.n_trees]) for e in range(hyper.n_ensembles)
    )
    metadata = {
        "seed": int(seed),
        "n_train": len(train),
        "score_space": "transformed",
        "temperature_K": float(train.temperature),
    }
    if train.radius is not None:
        metadata["radius_m"] = float(train.radius)
    if dataset_hash is not None:
        metadata["dataset_hash"] = dataset_hash
    return Forest(ensembles, hyper, feature_transform, target_transform,
                  train.separations, train.grid, train.kind, metadata)
