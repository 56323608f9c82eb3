"""Dataset directory codec."""

import csv
import json
import os
from typing import Any, Dict, List, Optional

import numpy as np

from ...core.errors import ConfigError, InputDataError
from ...utils.fs import atomic_directory, write_csv, write_json
from ...utils.logging import log
from ..dielectric.io import read_numeric_csv
from ..dielectric.models import DielectricModel, SpectrumSample
from ..lifshitz.curves import ForceCurve
from .dataset import Dataset, DatasetSample, DatasetSpec

SPEC_FILE = "spec.json"
MODELS_FILE = "models.json"
SPECTRA_FILE = "spectra.csv"
CURVES_FILE = "curves.csv"
SPLIT_FILE = "split.csv"
PROVENANCE_FILE = "provenance.json"

SPECTRA_HEADER = ["sample_id", "grid_index", "omega_rad_s", "eps_real", "eps_imag"]
CURVES_HEADER = ["sample_id", "d_m", "value"]
SPLIT_HEADER = ["sample_id", "partition"]


def write_dataset(path: str, dataset: Dataset, provenance: Optional[Dict[str, Any]] = None) -> None:
    """原子写入数据集目录；已有目录会被整体替换"""
    spec = dataset.spec
    with atomic_directory(path) as tmp:
        write_json(os.path.join(tmp, SPEC_FILE), spec.to_dict())
        write_json(os.path.join(tmp, MODELS_FILE),
                   [{"sample_id": s.sample_id, "model": s.model.to_dict()} for s in dataset.samples])

        def spectra_rows():
            for s in dataset.samples:
                for j, (w, re, im) in enumerate(zip(spec.grid.points, s.spectrum.eps_real, s.spectrum.eps_imag)):
                    yield s.sample_id, j, w, re, im

        def curve_rows():
            for s in dataset.samples:
                for d, v in zip(s.curve.separations, s.curve.values):
                    yield s.sample_id, d, v

        write_csv(os.path.join(tmp, SPECTRA_FILE), SPECTRA_HEADER, spectra_rows())
        write_csv(os.path.join(tmp, CURVES_FILE), CURVES_HEADER, curve_rows())
        if dataset.split is not None:
            write_csv(os.path.join(tmp, SPLIT_FILE), SPLIT_HEADER,
                      zip((s.sample_id for s in dataset.samples), dataset.split))
        if provenance:
            write_json(os.path.join(tmp, PROVENANCE_FILE), provenance)
    log(f"Wrote dataset ({len(dataset)} samples) to {path}")


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise InputDataError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise InputDataError(f"{path}: invalid JSON ({e})")


def _group_rows(values: np.ndarray, ids: List[int], name: str) -> Dict[int, np.ndarray]:
    """按 sample_id 分组，组内保持文件中的行顺序"""
    sample_col = values[:, 0].astype(np.int64)
    order = np.argsort(sample_col, kind="stable")
    unique, starts = np.unique(sample_col[order], return_index=True)
    if unique.tolist() != list(ids):
        raise InputDataError(f"{name}: sample ids do not match {MODELS_FILE}")
    return {int(sid): rows for sid, rows in zip(unique, np.split(values[order], starts[1:]))}


def read_split(path: str, ids: List[int]) -> Optional[tuple]:
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    if not rows or rows[0] != SPLIT_HEADER:
        raise InputDataError(f"{path}: expected header {','.join(SPLIT_HEADER)}")
    labels = {}
    for row in rows[1:]:
        if not row:
            continue
        try:
            sid, label = int(row[0]), row[1]
        except (ValueError, IndexError):
            raise InputDataError(f"{path}: malformed row {row}")
        if label not in ("train", "validation"):
            raise InputDataError(f"{path}: unknown partition {label!r}")
        labels[sid] = label
    if set(labels) != set(ids):
        raise InputDataError(f"{path}: split labels do not cover every sample")
    return tuple(labels[sid] for sid in ids)


def read_dataset(path: str) -> Dataset:
    """
    读取数据集目录

    Raises:
        InputDataError: 文件缺失或内容与 spec.json 不一致
    """
    if not os.path.isdir(path):
        raise InputDataError(f"dataset directory not found: {path}")
    try:
        spec = DatasetSpec.from_dict(_load_json(os.path.join(path, SPEC_FILE)))
    except ConfigError as e:
        raise InputDataError(f"{path}/{SPEC_FILE}: {e}")
    models = {int(m["sample_id"]): DielectricModel.from_dict(m["model"])
              for m in _load_json(os.path.join(path, MODELS_FILE))}
    ids = sorted(models)

    spectra = _group_rows(read_numeric_csv(os.path.join(path, SPECTRA_FILE), SPECTRA_HEADER), ids, SPECTRA_FILE)
    curves = _group_rows(read_numeric_csv(os.path.join(path, CURVES_FILE), CURVES_HEADER), ids, CURVES_FILE)
    radius = spec.sphere_radius if spec.curve_kind == "gradient" else None

    samples = []
    for sid in ids:
        sp, cv = spectra[sid], curves[sid]
        if sp.shape[0] != len(spec.grid) or not np.array_equal(sp[:, 2], spec.grid.points):
            raise InputDataError(f"{SPECTRA_FILE}: sample {sid} does not match the dataset grid")
        spectrum = SpectrumSample(spec.grid, sp[:, 3], sp[:, 4])
        curve = ForceCurve(cv[:, 1], cv[:, 2], spec.curve_kind, spec.temperature, radius)
        samples.append(DatasetSample(sid, models[sid], spectrum, curve))
    try:
        dataset = Dataset(spec, tuple(samples), read_split(os.path.join(path, SPLIT_FILE), ids))
    except ConfigError as e:
        raise InputDataError(f"{path}: {e}")
    log(f"Loaded dataset ({len(dataset)} samples) from {path}")
    return dataset
