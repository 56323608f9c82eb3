"""Finite-temperature Lifshitz interaction between two half-spaces."""

from .curves import ForceCurve, force_curve
from .fresnel import ReflectionPair, fresnel
from .matsubara import MatsubaraSettings, matsubara_frequency
from .pfa import SphereGeometry, pfa_gradient
from .pressure import free_energy_per_area, pressure

__all__ = [
    "ForceCurve",
    "MatsubaraSettings",
    "ReflectionPair",
    "SphereGeometry",
    "force_curve",
    "free_energy_per_area",
    "fresnel",
    "matsubara_frequency",
    "pfa_gradient",
    "pressure",
]
