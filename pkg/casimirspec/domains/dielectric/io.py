"""CSV codecs for tabulated optics and reconstructed spectra."""

import warnings
from typing import List, Optional

import numpy as np

from ...core.errors import InputDataError
from ...utils.fs import atomic_file, write_csv
from .continuation import TabulatedOptics
from .grid import FrequencyGrid
from .models import DrudeParams, SpectrumSample

TABULATED_HEADER = ["omega_rad_s", "eps_imag"]
SPECTRUM_HEADER = ["omega_rad_s", "eps_real", "eps_imag"]


def read_numeric_csv(path: str, expected_header: List[str], optional: int = 0) -> np.ndarray:
    """
    读取带表头的数值 CSV

    Args:
        path: 文件路径
        expected_header: 必需列名（顺序固定）
        optional: 允许追加的可选列数

    Returns:
        (行数, 列数) 浮点数组

    Raises:
        InputDataError: 文件缺失、表头不符或含非数值
    """
    try:
        with warnings.catch_warnings():
            # 空文件只给出 UserWarning，下面按行数报错
            warnings.simplefilter("ignore", UserWarning)
            table = np.genfromtxt(path, delimiter=",", names=True, dtype=np.float64,
                                  encoding="utf-8", autostrip=True, deletechars="")
    except OSError as e:
        raise InputDataError(f"cannot read {path}: {e}")
    except ValueError as e:
        raise InputDataError(f"{path}: malformed rows ({e})")
    header = list(table.dtype.names or ())
    n_req = len(expected_header)
    if header[:n_req] != expected_header or len(header) > n_req + optional:
        raise InputDataError(f"{path}: expected header {','.join(expected_header)}, got {','.join(header)}")
    table = np.atleast_1d(table)
    if table.size == 0:
        raise InputDataError(f"{path}: no data rows")
    values = np.column_stack([table[name] for name in header])
    if not np.all(np.isfinite(values)):
        raise InputDataError(f"{path}: non-numeric or non-finite value")
    return values


def read_tabulated_csv(path: str, extrapolation: Optional[DrudeParams]) -> TabulatedOptics:
    """读取 `omega_rad_s,eps_imag` 表格；Drude 外推参数来自运行配置"""
    values = read_numeric_csv(path, TABULATED_HEADER)
    return TabulatedOptics(values[:, 0], values[:, 1], extrapolation)


def write_spectrum_csv(path: str, spectrum: SpectrumSample) -> None:
    with atomic_file(path) as tmp:
        write_csv(tmp, SPECTRUM_HEADER,
                  zip(spectrum.grid.points, spectrum.eps_real, spectrum.eps_imag))


def read_spectrum_csv(path: str) -> SpectrumSample:
    values = read_numeric_csv(path, SPECTRUM_HEADER)
    return SpectrumSample(FrequencyGrid(values[:, 0]), values[:, 1], values[:, 2])
