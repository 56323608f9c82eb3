"""realistic: reconstruct a preset or tabulated metal with a Drude+Lorentz-trained forest."""

import argparse
import os

from ...domains.analysis.io import write_reconstruction, write_report
from ...domains.analysis.realistic import reconstruct_material
from ...utils.fs import atomic_directory, write_json
from .base import Workflow


class RealisticWorkflow(Workflow):
    name = "realistic"

    def execute(self, args: argparse.Namespace) -> None:
        result = reconstruct_material(self.config["realistic"]["material"], self.container.realistic_spec(),
                                      self.container.hyperparams(), self.container.validation_fraction(),
                                      self.container.workers)
        extra = {"material_median_rel_error_eps_imag": result.median_relative_imag_error()}
        if result.report is not None:
            extra["material_low_freq_abs_error_eps_real"] = result.report.mean_low_frequency_error
        with atomic_directory(self.output_dir(args)) as tmp:
            write_reconstruction(os.path.join(tmp, "realistic_recon.csv"), result.spectrum, result.truth,
                                 result.truth_imag)
            write_report(os.path.join(tmp, "report.csv"), result.validation, extra)
            write_json(os.path.join(tmp, "provenance.json"), self.provenance())
