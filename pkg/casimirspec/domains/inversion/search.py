"""Grid search over forest hyperparameters with k-fold cross-validation."""

import itertools
import math
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ...core.errors import ConfigError, InputDataError
from ...utils.logging import log
from ..synth.split import TrainingSet
from .forest import fit_forest
from .metrics import r2_score
from .tree import Hyperparams

DEFAULT_GRID: Dict[str, List[Any]] = {
    "n_trees": [100, 200, 400],
    "max_depth": [8, 16, None],
    "min_samples_leaf": [1, 2, 5],
    "max_features_fraction": [1.0 / 3.0, 1.0],
}

# 折划分使用独立随机流
_FOLD_STREAM = 2


@dataclass(frozen=True)
class GridScore:
    hyper: Hyperparams
    fold_scores: Tuple[float, ...]

    @property
    def mean(self) -> float:
        return float(np.mean(self.fold_scores))

    @property
    def std(self) -> float:
        return float(np.std(self.fold_scores))


def expand_grid(grid: Dict[str, Sequence[Any]], base: Optional[Hyperparams] = None) -> List[Hyperparams]:
    """按键的给定顺序做笛卡尔积"""
    if not grid:
        raise ConfigError("grid_search.grid must not be empty")
    base = base or Hyperparams()
    fields = set(Hyperparams.__dataclass_fields__)
    for key, values in grid.items():
        if key not in fields:
            raise ConfigError(f"unknown grid_search.grid key '{key}'")
        if not isinstance(values, (list, tuple)) or not values:
            raise ConfigError(f"grid_search.grid.{key} must be a non-empty list")
    keys = list(grid)
    return [replace(base, **dict(zip(keys, combo))) for combo in itertools.product(*(grid[k] for k in keys))]


def make_folds(n: int, folds: int, seed: int, holdout_fraction: Optional[float] = None) -> List[np.ndarray]:
    """
    返回各折的验证行号

    folds = 1 时必须给出 holdout_fraction，只留出一份。
    """
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), _FOLD_STREAM]))
    perm = rng.permutation(n)
    if folds == 1:
        if holdout_fraction is None or not 0.0 < holdout_fraction < 1.0:
            raise ConfigError("grid_search.folds = 1 requires grid_search.holdout_fraction in (0, 1)")
        n_hold = int(math.floor(holdout_fraction * n + 0.5))
        if n_hold < 2 or n - n_hold < 2:
            raise ConfigError(f"holdout_fraction={holdout_fraction!r} leaves too few rows for {n} samples")
        return [np.sort(perm[:n_hold])]
    if folds < 2:
        raise ConfigError(f"grid_search.folds must be >= 1, got {folds!r}")
    if n < 2 * folds:
        raise ConfigError(f"{folds}-fold cross-validation needs at least {2 * folds} samples, got {n}")
    return [np.sort(chunk) for chunk in np.array_split(perm, folds)]


def _selection_key(score: GridScore, order: int) -> Tuple:
    depth = score.hyper.max_depth if score.hyper.max_depth is not None else math.inf
    return (-score.mean, score.hyper.n_trees, depth, order)


def cross_validate(train: TrainingSet, hyper: Hyperparams, held_out: List[np.ndarray],
                   seed: int, workers: Optional[int] = 1) -> Tuple[float, ...]:
    """逐折训练并在留出部分上按变换空间计算 R²"""
    n = len(train)
    scores = []
    for rows in held_out:
        fit_rows = np.setdiff1d(np.arange(n), rows)
        fold_train = train.subset(fit_rows)
        forest = fit_forest(fold_train, hyper, seed, workers)
        pred = forest.predict_transformed(train.features[rows])
        truth = forest.target_transform.forward(train.targets[rows])
        scores.append(r2_score(pred, truth))
    return tuple(scores)


def grid_search(train: TrainingSet, grid: Optional[Dict[str, Sequence[Any]]] = None, folds: int = 3,
                seed: int = 0, holdout_fraction: Optional[float] = None,
                base: Optional[Hyperparams] = None,
                workers: Optional[int] = 1) -> Tuple[Hyperparams, List[GridScore]]:
    """
    对每个网格点做 k 折交叉验证，只使用训练划分

    选择平均 R² 最大者；并列时取 n_trees 更小者，再取 max_depth 更浅者（None 视为最深）。

    Returns:
        (最优超参数, 按网格顺序排列的得分表)
    """
    if not isinstance(train, TrainingSet):
        raise TypeError(f"grid_search accepts only a TrainingSet, got {type(train).__name__}")
    if len(train) < 4:
        raise InputDataError(f"grid search needs at least 4 training samples, got {len(train)}")
    points = expand_grid(grid if grid is not None else DEFAULT_GRID, base)
    held_out = make_folds(len(train), folds, seed, holdout_fraction)
    table = []
    for i, hyper in enumerate(points):
        scores = cross_validate(train, hyper, held_out, seed, workers)
        table.append(GridScore(hyper, scores))
        log(f"Grid point {i + 1}/{len(points)}: {hyper.to_dict()} -> R2={table[-1].mean:.4f}")
    best = min(range(len(table)), key=lambda i: _selection_key(table[i], i))
    log(f"Best hyperparams: {table[best].hyper.to_dict()} (R2={table[best].mean:.4f})")
    return table[best].hyper, table
