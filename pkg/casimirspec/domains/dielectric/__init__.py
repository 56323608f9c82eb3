"""Dielectric response models and imaginary-axis continuation."""

from .continuation import TabulatedOptics, kk_continuation, tabulate
from .grid import FrequencyGrid, default_grid
from .materials import ConstantPermittivity, preset, resolve_material
from .models import (
    DielectricModel,
    DrudeParams,
    LorentzOscillator,
    SpectrumSample,
    eval_imag,
    eval_real,
    ev_to_rad_s,
    rad_s_to_ev,
    spectrum_of,
)

__all__ = [
    "ConstantPermittivity",
    "DielectricModel",
    "DrudeParams",
    "FrequencyGrid",
    "LorentzOscillator",
    "SpectrumSample",
    "TabulatedOptics",
    "default_grid",
    "ev_to_rad_s",
    "eval_imag",
    "eval_real",
    "kk_continuation",
    "preset",
    "rad_s_to_ev",
    "resolve_material",
    "spectrum_of",
    "tabulate",
]
