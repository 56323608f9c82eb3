"""Multi-output CART regression tree stored as flat node arrays."""

import math
from dataclasses import asdict, dataclass
from typing import List, Optional, Tuple

import numpy as np
import numpy.typing as npt

from ...core.errors import ConfigError, InputDataError
from ...core.types import FloatArray

LEAF = -1

# 相对父节点 SSE 的最小有效增益，低于此视为"不降低不纯度"
_MIN_RELATIVE_GAIN = 1e-12


@dataclass(frozen=True)
class Hyperparams:
    """随机森林超参数"""

    n_trees: int = 200
    max_depth: Optional[int] = None
    min_samples_leaf: int = 2
    max_features_fraction: float = 1.0 / 3.0
    bootstrap: bool = True
    n_ensembles: int = 4

    def __post_init__(self):
        if not _is_int(self.n_trees) or self.n_trees < 1:
            raise ConfigError(f"hyperparams.n_trees must be >= 1, got {self.n_trees!r}")
        if self.max_depth is not None and (not _is_int(self.max_depth) or self.max_depth < 1):
            raise ConfigError(f"hyperparams.max_depth must be >= 1 or null, got {self.max_depth!r}")
        if not _is_int(self.min_samples_leaf) or self.min_samples_leaf < 1:
            raise ConfigError(f"hyperparams.min_samples_leaf must be >= 1, got {self.min_samples_leaf!r}")
        if not 0.0 < self.max_features_fraction <= 1.0:
            raise ConfigError(
                f"hyperparams.max_features_fraction must lie in (0, 1], got {self.max_features_fraction!r}"
            )
        if not isinstance(self.bootstrap, bool):
            raise ConfigError(f"hyperparams.bootstrap must be a boolean, got {self.bootstrap!r}")
        if not _is_int(self.n_ensembles) or self.n_ensembles < 1:
            raise ConfigError(f"hyperparams.n_ensembles must be >= 1, got {self.n_ensembles!r}")

    def n_split_features(self, n_features: int) -> int:
        return min(n_features, max(1, math.ceil(self.max_features_fraction * n_features - 1e-12)))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Hyperparams":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown hyperparams key(s): {', '.join(sorted(unknown))}")
        return cls(**data)


def _is_int(value) -> bool:
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


@dataclass(frozen=True)
class TreeNode:
    """单个节点的只读视图；叶节点 feature 为 -1"""

    feature: int
    threshold: float
    left: int
    right: int
    value: FloatArray
    n_samples: int

    @property
    def is_leaf(self) -> bool:
        return self.feature == LEAF


@dataclass(frozen=True, eq=False)
class Tree:
    """
    扁平数组表示的回归树，节点按先序编号，0 为根

    内部节点：x[feature] <= threshold 走 left，否则走 right。
    叶节点：value 为该叶训练样本的目标均值。
    """

    feature: np.ndarray
    threshold: FloatArray
    left: np.ndarray
    right: np.ndarray
    value: FloatArray
    n_samples: np.ndarray

    def __post_init__(self):
        n = self.feature.size
        if n == 0:
            raise InputDataError("tree has no nodes")
        for name in ("threshold", "left", "right", "n_samples"):
            if getattr(self, name).shape != (n,):
                raise InputDataError(f"tree array '{name}' must have {n} entries")
        if self.value.ndim != 2 or self.value.shape[0] != n:
            raise InputDataError("tree values must be an (n_nodes, n_outputs) matrix")
        internal = self.feature != LEAF
        if not np.all(np.isfinite(self.threshold[internal])):
            raise InputDataError("tree thresholds must be finite")
        children = np.concatenate([self.left[internal], self.right[internal]])
        if np.any(children <= 0) or np.any(children >= n):
            raise InputDataError("tree child index out of range")

    def __len__(self) -> int:
        return self.feature.size

    @property
    def n_outputs(self) -> int:
        return self.value.shape[1]

    @property
    def n_leaves(self) -> int:
        return int(np.sum(self.feature == LEAF))

    def node(self, i: int) -> TreeNode:
        return TreeNode(int(self.feature[i]), float(self.threshold[i]), int(self.left[i]),
                        int(self.right[i]), self.value[i], int(self.n_samples[i]))

    @property
    def root(self) -> TreeNode:
        return self.node(0)

    def depth(self) -> int:
        depths = np.zeros(len(self), dtype=np.int64)
        for i in range(len(self)):
            if self.feature[i] != LEAF:
                depths[self.left[i]] = depths[self.right[i]] = depths[i] + 1
        return int(depths.max())

    def apply(self, x: npt.ArrayLike) -> np.ndarray:
        """每行落入的叶节点编号（按层批量下推）"""
        x = np.asarray(x, dtype=np.float64)
        nodes = np.zeros(x.shape[0], dtype=np.int64)
        rows = np.arange(x.shape[0])
        active = self.feature[nodes] != LEAF
        while np.any(active):
            idx = rows[active]
            cur = nodes[idx]
            go_left = x[idx, self.feature[cur]] <= self.threshold[cur]
            nodes[idx] = np.where(go_left, self.left[cur], self.right[cur])
            active = self.feature[nodes] != LEAF
        return nodes

    def predict(self, x: npt.ArrayLike) -> FloatArray:
        return self.value[self.apply(x)]

    def to_dict(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": [float(t) for t in self.threshold],
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": [[float(v) for v in row] for row in self.value],
            "n_samples": self.n_samples.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Tree":
        try:
            return cls(
                feature=np.asarray(data["feature"], dtype=np.int64),
                threshold=np.asarray(data["threshold"], dtype=np.float64),
                left=np.asarray(data["left"], dtype=np.int64),
                right=np.asarray(data["right"], dtype=np.int64),
                value=np.asarray(data["value"], dtype=np.float64),
                n_samples=np.asarray(data["n_samples"], dtype=np.int64),
            )
        except KeyError as e:
            raise InputDataError(f"tree is missing {e}")


def _best_split(xn: FloatArray, yn: FloatArray, features: np.ndarray,
                min_leaf: int) -> Optional[Tuple[int, float, np.ndarray, float]]:
    """
    在候选特征上寻找使子节点 SSE 之和最小的切分

    SSE_l + SSE_r 最小等价于 Σ_m (S_l²/n_l + S_r²/n_r) 最大。并列时取编号最小的特征、
    再取最小的阈值。

    Returns:
        (特征, 阈值, 左子行掩码, 增益) 或 None
    """
    n = yn.shape[0]
    total = yn.sum(axis=0)
    base = float(total @ total) / n
    counts = np.arange(1, n, dtype=np.float64)
    best = None
    best_score = -np.inf
    for f in features:
        order = np.argsort(xn[:, f], kind="stable")
        xs = xn[order, f]
        left_sum = np.cumsum(yn[order], axis=0)[:-1]
        right_sum = total - left_sum
        score = (np.einsum("ij,ij->i", left_sum, left_sum) / counts
                 + np.einsum("ij,ij->i", right_sum, right_sum) / (n - counts))
        # 位置 i 表示前 i+1 行进入左子节点
        valid = xs[:-1] < xs[1:]
        valid[: min_leaf - 1] = False
        valid[n - min_leaf:] = False
        if not np.any(valid):
            continue
        score = np.where(valid, score, -np.inf)
        i = int(np.argmax(score))
        if score[i] > best_score:
            threshold = 0.5 * (xs[i] + xs[i + 1])
            if not xs[i] <= threshold < xs[i + 1]:
                threshold = xs[i]
            best_score = float(score[i])
            best = (int(f), float(threshold))
    if best is None:
        return None
    f, threshold = best
    return f, threshold, xn[:, f] <= threshold, best_score - base


def fit_tree(x: npt.ArrayLike, y: npt.ArrayLike, hyper: Hyperparams,
             rng: np.random.Generator) -> Tree:
    """
    贪心递归二分（多输出 CART）

    切分准则：所有输出维度方差和的最大下降。每个节点从全部特征中无放回抽取
    ⌈max_features_fraction·n_features⌉ 个候选。深度达到 max_depth、行数 < 2·min_samples_leaf
    或没有能降低不纯度的切分时成为叶节点。

    Raises:
        InputDataError: 空输入、行数不一致或含非有限值
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 2 or y.ndim != 2 or x.shape[0] == 0 or x.shape[1] == 0:
        raise InputDataError("fit_tree needs non-empty 2-D feature and target matrices")
    if x.shape[0] != y.shape[0]:
        raise InputDataError(f"feature rows ({x.shape[0]}) != target rows ({y.shape[0]})")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise InputDataError("fit_tree inputs must be finite")

    n_features = x.shape[1]
    k = hyper.n_split_features(n_features)
    min_leaf = hyper.min_samples_leaf

    feature: List[int] = []
    threshold: List[float] = []
    left: List[int] = []
    right: List[int] = []
    value: List[FloatArray] = []
    n_samples: List[int] = []

    # 先序构建：栈中为 (行索引, 深度, 父节点, 是否左子)
    stack = [(np.arange(x.shape[0]), 0, -1, False)]
    while stack:
        rows, depth, parent, is_left = stack.pop()
        node = len(feature)
        if parent >= 0:
            if is_left:
                left[parent] = node
            else:
                right[parent] = node
        yn = y[rows]
        mean = yn.mean(axis=0)
        feature.append(LEAF)
        threshold.append(0.0)
        left.append(LEAF)
        right.append(LEAF)
        value.append(mean)
        n_samples.append(rows.size)

        if hyper.max_depth is not None and depth >= hyper.max_depth:
            continue
        if rows.size < 2 * min_leaf:
            continue
        resid = yn - mean
        sse = float(np.einsum("ij,ij->", resid, resid))
        if sse <= 0.0:
            continue
        candidates = np.sort(rng.choice(n_features, size=k, replace=False)) if k < n_features \
            else np.arange(n_features)
        found = _best_split(x[rows], yn, candidates, min_leaf)
        if found is None:
            continue
        f, t, mask, gain = found
        if gain <= _MIN_RELATIVE_GAIN * sse:
            continue
        feature[node] = f
        threshold[node] = t
        # 右子先入栈，保证左子树先编号
        stack.append((rows[~mask], depth + 1, node, False))
        stack.append((rows[mask], depth + 1, node, True))

    return Tree(
        feature=np.array(feature, dtype=np.int64),
        threshold=np.array(threshold, dtype=np.float64),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        value=np.array(value, dtype=np.float64).reshape(len(feature), y.shape[1]),
        n_samples=np.array(n_samples, dtype=np.int64),
    )
