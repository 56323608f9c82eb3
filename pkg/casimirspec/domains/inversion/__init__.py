"""Random-forest inversion from force curves to complex permittivity."""

from .forest import Forest, fit_forest, predict, predict_view
from .io import read_forest, write_forest, write_grid_scores
from .metrics import mean_baseline_r2, r2_score
from .search import DEFAULT_GRID, GridScore, grid_search
from .transforms import FeatureTransform, SignedLogTransform, TargetTransform
from .tree import Hyperparams, Tree, TreeNode, fit_tree

__all__ = [
    "DEFAULT_GRID",
    "FeatureTransform",
    "Forest",
    "GridScore",
    "Hyperparams",
    "SignedLogTransform",
    "TargetTransform",
    "Tree",
    "TreeNode",
    "fit_forest",
    "fit_tree",
    "grid_search",
    "mean_baseline_r2",
    "predict",
    "predict_view",
    "r2_score",
    "read_forest",
    "write_forest",
    "write_grid_scores",
]
