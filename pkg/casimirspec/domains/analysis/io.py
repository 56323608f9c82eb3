"""Measured-gradient input and plot-ready report tables."""

import json
import os
from typing import Any, Dict, Optional

from ...core.errors import InputDataError
from ...core.types import FloatArray
from ...utils.fs import atomic_file, write_csv, write_json
from ..dielectric.io import read_numeric_csv
from ..dielectric.models import SpectrumSample
from ..lifshitz.io import sidecar_path
from .binning import MeasuredGradientFile
from .report import ReconstructionReport
from .sweep import SweepResult, sweep_rows

MEASURED_HEADER = ["d_m", "gradient_N_per_m"]
MEASURED_SIGMA = "sigma_N_per_m"
SWEEP_HEADER = ["d_max_m", "n_separations", "mean_low_freq_abs_error", "band_lo", "band_hi",
                "mean_eps_imag_error_top_decade", "validation_r2"]
PER_FREQ_HEADER = ["d_max_m", "omega_rad_s", "mae_eps_real", "mae_eps_imag"]
RECON_HEADER = ["omega_rad_s", "eps_real_pred", "eps_imag_pred"]
RECON_REF_HEADER = RECON_HEADER + ["eps_real_true", "eps_imag_true"]
RECON_IMAG_REF_HEADER = RECON_HEADER + ["eps_imag_true"]
REPORT_HEADER = ["metric", "value", "band_lo", "band_hi"]


def read_measured(path: str) -> MeasuredGradientFile:
    """
    读取 `d_m,gradient_N_per_m[,sigma_N_per_m]` 与 JSON 附属文件 {radius_m, temperature_K}

    Raises:
        InputDataError: 附属文件缺失或字段缺失、CSV 格式错误
    """
    meta_path = sidecar_path(path)
    if not os.path.exists(meta_path):
        raise InputDataError(f"missing sidecar {meta_path}")
    try:
        with open(meta_path, "r", encoding="utf-8") as f:
            meta = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputDataError(f"cannot read sidecar {meta_path}: {e}")
    for key in ("radius_m", "temperature_K"):
        if key not in meta:
            raise InputDataError(f"{meta_path}: missing '{key}'")
    values = read_numeric_csv(path, MEASURED_HEADER, optional=1)
    sigma = values[:, 2] if values.shape[1] == 3 else None
    return MeasuredGradientFile(values[:, 0], values[:, 1], float(meta["radius_m"]),
                                float(meta["temperature_K"]), sigma)


def write_measured(path: str, measured: MeasuredGradientFile,
                   provenance: Optional[Dict[str, Any]] = None) -> None:
    meta: Dict[str, Any] = {"radius_m": measured.radius, "temperature_K": measured.temperature}
    if provenance:
        meta["provenance"] = provenance
    if measured.uncertainty is None:
        header, rows = MEASURED_HEADER, zip(measured.separations, measured.gradients)
    else:
        header = MEASURED_HEADER + [MEASURED_SIGMA]
        rows = zip(measured.separations, measured.gradients, measured.uncertainty)
    with atomic_file(path) as tmp_csv, atomic_file(sidecar_path(path)) as tmp_json:
        write_csv(tmp_csv, header, rows)
        write_json(tmp_json, meta)


def write_sweep_table(path: str, result: SweepResult) -> None:
    """每个 d_max 一行；末尾附 Spearman 秩相关"""
    rows = [tuple("" if v is None else v for v in row) for row in sweep_rows(result)]
    rho = result.spearman
    rows.append(("spearman", "" if rho is None else rho, "", "", "", "", ""))
    write_csv(path, SWEEP_HEADER, rows)


def write_per_freq_error(path: str, result: SweepResult) -> None:
    """长表：每个 (d_max, ω) 一行"""
    rows = []
    for leg in result.legs:
        report = leg.report
        for w, e_re, e_im in zip(report.grid.points, report.mae_real, report.mae_imag):
            rows.append((leg.d_max, w, e_re, e_im))
    write_csv(path, PER_FREQ_HEADER, rows)


def write_reconstruction(path: str, spectrum: SpectrumSample,
                         reference: Optional[SpectrumSample] = None,
                         reference_imag: Optional[FloatArray] = None) -> None:
    """realistic_recon.csv / experiment_recon.csv：重建谱，可附真值列（表格材料只有 ε″ 真值）"""
    if reference is not None:
        write_csv(path, RECON_REF_HEADER, zip(spectrum.grid.points, spectrum.eps_real, spectrum.eps_imag,
                                              reference.eps_real, reference.eps_imag))
    elif reference_imag is not None:
        write_csv(path, RECON_IMAG_REF_HEADER, zip(spectrum.grid.points, spectrum.eps_real, spectrum.eps_imag,
                                                   reference_imag))
    else:
        write_csv(path, RECON_HEADER, zip(spectrum.grid.points, spectrum.eps_real, spectrum.eps_imag))


def write_report(path: str, report: ReconstructionReport, extra: Optional[Dict[str, float]] = None) -> None:
    rows = list(report.summary_rows())
    for key, value in (extra or {}).items():
        rows.append((key, value, "", ""))
    write_csv(path, REPORT_HEADER, [tuple("" if v is None else v for v in row) for row in rows])
