"""ForceCurve CSV + JSON sidecar codec."""

import json
import os
from typing import Any, Dict, Optional

from ...core.errors import InputDataError
from ...utils.fs import atomic_files, write_csv, write_json
from ..dielectric.io import read_numeric_csv
from .curves import ForceCurve

CURVE_HEADER = ["d_m", "value"]
SIGMA_COLUMN = "sigma"


def sidecar_path(csv_path: str) -> str:
    """curve.csv -> curve.json"""
    root, _ = os.path.splitext(csv_path)
    return root + ".json"


def write_curve(path: str, curve: ForceCurve, provenance: Optional[Dict[str, Any]] = None) -> None:
    """写曲线 CSV 与 JSON 附属文件 {kind, temperature_K, radius_m?}；有不确定度时追加 sigma 列"""
    meta: Dict[str, Any] = {"kind": curve.kind, "temperature_K": curve.temperature}
    if curve.radius is not None:
        meta["radius_m"] = curve.radius
    if provenance:
        meta["provenance"] = provenance
    if curve.uncertainty is None:
        header, rows = CURVE_HEADER, zip(curve.separations, curve.values)
    else:
        header = CURVE_HEADER + [SIGMA_COLUMN]
        rows = zip(curve.separations, curve.values, curve.uncertainty)
    with atomic_files(path, sidecar_path(path)) as (tmp_csv, tmp_json):
        write_csv(tmp_csv, header, rows)
        write_json(tmp_json, meta)


def read_curve(path: str) -> ForceCurve:
    """读取曲线 CSV；缺少附属文件时报输入错误"""
    meta_path = sidecar_path(path)
    if not os.path.exists(meta_path):
        raise InputDataError(f"missing sidecar {meta_path}")
    try:
        with open(meta_path, "r", encoding="utf-8") as f:
            meta = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputDataError(f"cannot read sidecar {meta_path}: {e}")
    for key in ("kind", "temperature_K"):
        if key not in meta:
            raise InputDataError(f"{meta_path}: missing '{key}'")
    values = read_numeric_csv(path, CURVE_HEADER, optional=1)
    sigma = values[:, 2] if values.shape[1] > 2 else None
    return ForceCurve(values[:, 0], values[:, 1], meta["kind"], float(meta["temperature_K"]),
                      meta.get("radius_m"), sigma)
