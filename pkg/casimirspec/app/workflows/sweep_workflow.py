"""sweep: reconstruction error against the largest separation."""

import argparse
import os

from ...domains.analysis.io import write_per_freq_error, write_sweep_table
from ...domains.analysis.sweep import dmax_sweep
from ...utils.fs import atomic_directory, write_json
from .base import Workflow


class SweepWorkflow(Workflow):
    name = "sweep"

    def execute(self, args: argparse.Namespace) -> None:
        result = dmax_sweep(self.container.sweep_spec(), self.container.hyperparams(), self.container.workers)
        with atomic_directory(self.output_dir(args)) as tmp:
            write_sweep_table(os.path.join(tmp, "dmax_sweep.csv"), result)
            write_per_freq_error(os.path.join(tmp, "per_freq_error.csv"), result)
            write_json(os.path.join(tmp, "provenance.json"), self.provenance())
