"""Proximity force approximation for the sphere-plate gradient."""

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...core.constants import PFA_RADIUS_RATIO
from ...core.errors import ConfigError, PfaApplicabilityWarning
from ...core.types import ImaginaryResponse
from ...utils.logging import log
from .matsubara import MatsubaraSettings, ResponseTable
from .pressure import pressure


@dataclass(frozen=True)
class SphereGeometry:
    """球-平板几何：球半径 R (m)"""

    radius: float

    def __post_init__(self):
        if not np.isfinite(self.radius) or self.radius <= 0:
            raise ConfigError(f"sphere radius must be > 0 m, got {self.radius!r}")

    def pfa_valid(self, d: float) -> bool:
        return self.radius >= PFA_RADIUS_RATIO * d


def pfa_gradient(d: float, geom: SphereGeometry, mat1: ImaginaryResponse, mat2: ImaginaryResponse,
                 settings: Optional[MatsubaraSettings] = None,
                 table: Optional[ResponseTable] = None) -> float:
    """
    球-平板力梯度 F′(d) = 2πR·P(d)（N/m），符号沿用吸引为负的约定

    R < 10·d 时发出 PfaApplicabilityWarning。
    """
    if not geom.pfa_valid(d):
        message = f"PFA questionable: R={geom.radius!r} m < {PFA_RADIUS_RATIO:g}·d (d={d!r} m)"
        log(message)
        warnings.warn(message, PfaApplicabilityWarning, stacklevel=2)
    return 2.0 * np.pi * geom.radius * pressure(d, mat1, mat2, settings, table)
