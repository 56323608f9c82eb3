"""experiment: reconstruction from a measured (or simulated-control) gradient file."""

import argparse
import os

import numpy as np

from ...domains.analysis.experiment import reconstruct_experiment, synthesize_measurement
from ...domains.analysis.io import read_measured, write_measured, write_reconstruction, write_report
from ...domains.dielectric.materials import resolve_material
from ...domains.dielectric.models import DielectricModel
from ...utils.fs import atomic_directory, write_json
from ...utils.logging import log
from .base import Workflow


class ExperimentWorkflow(Workflow):
    """实验重建；未给测量文件或指定 --control 时按 experiment.control 合成对照数据"""

    name = "experiment"

    def execute(self, args: argparse.Namespace) -> None:
        exp = self.config["experiment"]
        measured_file = getattr(args, "measured", None) or exp["measured_file"]
        control = getattr(args, "control", False) or not measured_file
        reference = exp["reference"]

        if control:
            c = exp["control"]
            separations = np.linspace(c["d_min_m"], c["d_max_m"], c["n_points"])
            measured = synthesize_measurement(
                c["material"], separations, float(c["radius_m"]), float(c["temperature_K"]),
                self.config["sensing_surface"], float(c["noise"]), self.container.seed, c["oversample"],
                self.container.dataset_spec().settings(),
            )
            if reference is None:
                reference = c["material"]
            log("Using synthesised control measurement")
        else:
            measured = read_measured(measured_file)

        ref_model = None
        if reference is not None:
            ref_model = resolve_material(reference)
            if not isinstance(ref_model, DielectricModel):
                log("Reference material has no real-axis spectrum; skipping reference errors")
                ref_model = None

        result = reconstruct_experiment(measured, exp["n_bins"], self.container.dataset_spec(),
                                        self.container.hyperparams(), self.container.validation_fraction(),
                                        ref_model, self.container.workers)

        extra = {}
        if result.reference is not None:
            extra["ref_low_freq_abs_error_eps_real"] = result.reference_report.mean_low_frequency_error
            extra["ref_median_rel_error_eps_imag_lowest_decade"] = result.lowest_decade_imag_error()
            extra["ref_mean_abs_error_eps_real"] = result.mean_real_error()
        with atomic_directory(self.output_dir(args)) as tmp:
            write_reconstruction(os.path.join(tmp, "experiment_recon.csv"), result.spectrum, result.reference)
            write_report(os.path.join(tmp, "report.csv"), result.validation, extra)
            if control:
                write_measured(os.path.join(tmp, "measured.csv"), measured)
            write_json(os.path.join(tmp, "provenance.json"), self.provenance())
