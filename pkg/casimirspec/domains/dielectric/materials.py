"""Material presets and material-spec resolution."""

from dataclasses import dataclass
from typing import Any, Dict, Tuple, Union

import numpy as np
import numpy.typing as npt

from ...core.constants import GOLD_DAMPING, GOLD_PLASMA_FREQUENCY
from ...core.errors import ConfigError, DomainError
from ...core.types import FloatArray, ImaginaryResponse
from .continuation import TabulatedOptics
from .models import DielectricModel, DrudeParams, LorentzOscillator, ev_to_rad_s


@dataclass(frozen=True)
class ConstantPermittivity:
    """频率无关的 ε(iξ)；1 为真空，≥ 1e10 近似理想导体"""

    value: float

    def __post_init__(self):
        if not np.isfinite(self.value) or self.value < 1.0:
            raise DomainError(f"constant permittivity must be >= 1, got {self.value!r}")

    def eps_imag_axis(self, xi: npt.ArrayLike) -> FloatArray:
        x = np.asarray(xi, dtype=np.float64)
        if np.any(x <= 0):
            raise DomainError("xi must be > 0")
        return np.full(x.shape, float(self.value))

    def static_tm_reflection(self) -> float:
        return (self.value - 1.0) / (self.value + 1.0)


def _drude_lorentz_ev(plasma_ev: float, f0: float, gamma0_ev: float,
                      oscillators_ev: Tuple[Tuple[float, float, float], ...]) -> DielectricModel:
    """
    由 eV 单位的 Drude-Lorentz 拟合参数构造模型

    Args:
        plasma_ev: 等离子体能量 ħω_p
        f0: Drude 项强度
        gamma0_ev: Drude 阻尼
        oscillators_ev: (f_j, Γ_j, ω_j) 列表，Ω_j = √f_j·ω_p
    """
    wp = float(ev_to_rad_s(plasma_ev))
    drude = DrudeParams(np.sqrt(f0) * wp, float(ev_to_rad_s(gamma0_ev)))
    oscillators = tuple(
        LorentzOscillator(np.sqrt(f) * wp, float(ev_to_rad_s(w)), float(ev_to_rad_s(g)))
        for f, g, w in oscillators_ev
    )
    return DielectricModel(drude, oscillators)


# 贵金属的 Drude-Lorentz 拟合（eV）
_PRESETS_EV: Dict[str, Tuple[float, float, float, Tuple[Tuple[float, float, float], ...]]] = {
    "gold": (9.03, 0.760, 0.053, (
        (0.024, 0.241, 0.415),
        (0.010, 0.345, 0.830),
        (0.071, 0.870, 2.969),
        (0.601, 2.494, 4.304),
        (4.384, 2.214, 13.32),
    )),
    "palladium": (9.72, 0.330, 0.008, (
        (0.649, 2.950, 0.336),
        (0.121, 0.555, 0.501),
        (0.638, 4.621, 1.659),
        (0.453, 3.236, 5.715),
    )),
    "platinum": (9.59, 0.333, 0.080, (
        (0.191, 0.517, 0.780),
        (0.659, 1.838, 1.314),
        (0.547, 3.668, 3.141),
        (3.576, 8.517, 9.249),
    )),
}

PRESET_NAMES = ("gold_drude", "gold", "palladium", "platinum", "vacuum", "ideal_metal")

Material = Union[DielectricModel, TabulatedOptics, ConstantPermittivity]


def gold_drude() -> DielectricModel:
    """默认金感应面：ω_p = 1.37e16 rad/s, γ = 5.3e13 rad/s"""
    return DielectricModel(DrudeParams(GOLD_PLASMA_FREQUENCY, GOLD_DAMPING))


def preset(name: str) -> Material:
    """按名称获取预设材料"""
    key = name.lower()
    if key == "gold_drude":
        return gold_drude()
    if key == "vacuum":
        return ConstantPermittivity(1.0)
    if key == "ideal_metal":
        return ConstantPermittivity(1e10)
    if key in _PRESETS_EV:
        return _drude_lorentz_ev(*_PRESETS_EV[key])
    raise ConfigError(f"unknown material preset '{name}', expected one of {', '.join(PRESET_NAMES)}")


def _model_from_spec(spec: Dict[str, Any]) -> DielectricModel:
    units = spec.get("units", "rad/s")
    if units not in ("rad/s", "eV"):
        raise ConfigError(f"material.units must be 'rad/s' or 'eV', got '{units}'")
    scale = float(ev_to_rad_s(1.0)) if units == "eV" else 1.0

    def scaled(d: Dict[str, float]) -> Dict[str, float]:
        return {k: float(v) * scale for k, v in d.items()}

    data = {
        "drude": scaled(spec["drude"]) if spec.get("drude") else None,
        "oscillators": [scaled(o) for o in spec.get("oscillators", [])],
    }
    try:
        return DielectricModel.from_dict(data)
    except (KeyError, TypeError) as e:
        raise ConfigError(f"invalid material parameters: {e}")


def resolve_material(spec: Union[str, Dict[str, Any], Material]) -> Material:
    """
    把配置中的材料描述解析为虚频响应提供者

    支持：
    - 预设名称字符串，或 {"preset": name}
    - {"drude": {...}, "oscillators": [...], "units": "rad/s" | "eV"}
    - {"constant": ε}
    - {"tabulated": csv 路径, "extrapolation": {"plasma_frequency", "damping"}}
    """
    if isinstance(spec, (DielectricModel, TabulatedOptics, ConstantPermittivity)):
        return spec
    if isinstance(spec, str):
        return preset(spec)
    if not isinstance(spec, dict):
        raise ConfigError(f"material spec must be a name or an object, got {type(spec).__name__}")
    if "preset" in spec:
        return preset(spec["preset"])
    if "constant" in spec:
        return ConstantPermittivity(float(spec["constant"]))
    if "tabulated" in spec:
        from .io import read_tabulated_csv
        extrapolation = spec.get("extrapolation")
        drude = DrudeParams.from_dict(extrapolation) if extrapolation else None
        return read_tabulated_csv(spec["tabulated"], drude)
    if "drude" in spec or "oscillators" in spec:
        return _model_from_spec(spec)
    raise ConfigError(f"unrecognised material spec keys: {sorted(spec)}")


def is_passive_response(material: ImaginaryResponse) -> bool:
    """真空（ε ≡ 1）之外的材料都产生吸引力"""
    return not (isinstance(material, ConstantPermittivity) and material.value == 1.0)
