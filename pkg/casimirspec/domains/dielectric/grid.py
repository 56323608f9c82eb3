"""Real-frequency grids."""

from dataclasses import dataclass

import numpy as np

from ...core.constants import DEFAULT_GRID_MAX, DEFAULT_GRID_MIN, DEFAULT_GRID_POINTS
from ...core.errors import ConfigError
from ...core.types import FloatArray


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """角频率网格（rad/s），严格递增且全部为正"""

    points: FloatArray

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim != 1 or points.size == 0:
            raise ConfigError("frequency grid must be a non-empty 1-D array")
        if not np.all(np.isfinite(points)) or np.any(points <= 0):
            raise ConfigError("frequency grid points must be finite and > 0")
        if np.any(np.diff(points) <= 0):
            raise ConfigError("frequency grid must be strictly increasing")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return self.points.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrequencyGrid):
            return NotImplemented
        return np.array_equal(self.points, other.points)

    def __hash__(self) -> int:
        return hash(self.points.tobytes())

    @property
    def omega_min(self) -> float:
        return float(self.points[0])

    @property
    def decades(self) -> float:
        return float(np.log10(self.points[-1] / self.points[0]))

    @classmethod
    def logspace(cls, omega_min: float, omega_max: float, n_points: int) -> "FrequencyGrid":
        """对数均匀网格"""
        if not (0 < omega_min < omega_max) or n_points < 2:
            raise ConfigError(
                f"invalid grid: omega_min={omega_min}, omega_max={omega_max}, n_points={n_points}"
            )
        return cls(np.logspace(np.log10(omega_min), np.log10(omega_max), int(n_points)))

    def to_dict(self) -> dict:
        return {"points": [float(p) for p in self.points]}

    @classmethod
    def from_dict(cls, data: dict) -> "FrequencyGrid":
        return cls(np.asarray(data["points"], dtype=np.float64))


def default_grid() -> FrequencyGrid:
    """默认网格：80 点覆盖 1e11 - 1e19 rad/s（8 个十倍频程）"""
    return FrequencyGrid.logspace(DEFAULT_GRID_MIN, DEFAULT_GRID_MAX, DEFAULT_GRID_POINTS)
