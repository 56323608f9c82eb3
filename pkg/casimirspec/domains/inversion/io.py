"""forest.json and grid_scores.csv codecs."""

import json
from typing import Any, Dict, List, Optional

import numpy as np

from ...core.errors import ConfigError, InputDataError
from ...utils.fs import atomic_file, format_float, write_csv, write_json
from ..dielectric.grid import FrequencyGrid
from .forest import Forest
from .search import GridScore
from .transforms import FeatureTransform, TargetTransform
from .tree import Hyperparams, Tree

FOREST_FORMAT = "casimirspec-forest"
FOREST_FORMAT_VERSION = 1

GRID_SCORES_HEADER = ["n_trees", "max_depth", "min_samples_leaf", "max_features_fraction",
                      "bootstrap", "n_ensembles", "mean_r2", "std_r2", "fold_r2"]


def forest_to_dict(forest: Forest) -> Dict[str, Any]:
    return {
        "format": FOREST_FORMAT,
        "format_version": FOREST_FORMAT_VERSION,
        "hyperparams": forest.hyper.to_dict(),
        "feature_transform": forest.feature_transform.to_dict(),
        "target_transform": forest.target_transform.to_dict(),
        "separations": [float(d) for d in forest.separations],
        "grid": forest.grid.to_dict(),
        "kind": forest.kind,
        "metadata": forest.metadata,
        "ensembles": [[tree.to_dict() for tree in ensemble] for ensemble in forest.ensembles],
    }


def forest_from_dict(data: Dict[str, Any]) -> Forest:
    if data.get("format") != FOREST_FORMAT:
        raise InputDataError(f"not a forest file (format={data.get('format')!r})")
    if data.get("format_version") != FOREST_FORMAT_VERSION:
        raise InputDataError(f"unsupported forest format version {data.get('format_version')!r}")
    try:
        return Forest(
            ensembles=tuple(tuple(Tree.from_dict(t) for t in e) for e in data["ensembles"]),
            hyper=Hyperparams.from_dict(data["hyperparams"]),
            feature_transform=FeatureTransform.from_dict(data["feature_transform"]),
            target_transform=TargetTransform.from_dict(data["target_transform"]),
            separations=np.asarray(data["separations"], dtype=np.float64),
            grid=FrequencyGrid.from_dict(data["grid"]),
            kind=data["kind"],
            metadata=data.get("metadata", {}),
        )
    except KeyError as e:
        raise InputDataError(f"forest file is missing {e}")
    except ConfigError as e:
        raise InputDataError(f"forest file: {e}")


def write_forest(path: str, forest: Forest, provenance: Optional[Dict[str, Any]] = None) -> None:
    data = forest_to_dict(forest)
    if provenance:
        data["provenance"] = provenance
    with atomic_file(path) as tmp:
        write_json(tmp, data)


def read_forest(path: str) -> Forest:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise InputDataError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise InputDataError(f"{path}: invalid JSON ({e})")
    return forest_from_dict(data)


def write_grid_scores(path: str, table: List[GridScore]) -> None:
    """每个网格点一行；fold_r2 以分号连接各折得分"""
    rows = []
    for score in table:
        h = score.hyper
        rows.append([
            h.n_trees,
            "none" if h.max_depth is None else h.max_depth,
            h.min_samples_leaf,
            h.max_features_fraction,
            "true" if h.bootstrap else "false",
            h.n_ensembles,
            score.mean,
            score.std,
            ";".join(format_float(s) for s in score.fold_scores),
        ])
    with atomic_file(path) as tmp:
        write_csv(tmp, GRID_SCORES_HEADER, rows)
