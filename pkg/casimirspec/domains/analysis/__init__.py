"""Separation-range sweeps, realistic and experimental reconstructions, error reports."""

from .binning import MeasuredGradientFile, bin_measurements
from .experiment import ExperimentResult, reconstruct_experiment, synthesize_measurement
from .noise import add_relative_noise
from .realistic import RealisticResult, reconstruct_material
from .report import ReconstructionReport, bootstrap_band, build_report, evaluate, per_frequency_error
from .sweep import SweepResult, SweepSpec, dmax_sweep

__all__ = [
    "ExperimentResult",
    "MeasuredGradientFile",
    "RealisticResult",
    "ReconstructionReport",
    "SweepResult",
    "SweepSpec",
    "add_relative_noise",
    "bin_measurements",
    "bootstrap_band",
    "build_report",
    "dmax_sweep",
    "evaluate",
    "per_frequency_error",
    "reconstruct_experiment",
    "reconstruct_material",
    "synthesize_measurement",
]
