"""generate: synthetic dataset directory."""

import argparse

from ...domains.synth.dataset import generate_dataset
from ...domains.synth.io import write_dataset
from ...domains.synth.split import split
from .base import Workflow


class GenerateWorkflow(Workflow):
    name = "generate"

    def execute(self, args: argparse.Namespace) -> None:
        spec = self.container.dataset_spec()
        dataset = generate_dataset(spec, self.container.workers)
        dataset = split(dataset, self.container.validation_fraction(), spec.seed)
        write_dataset(self.output(args, self.config["paths"]["dataset_dir"]), dataset, self.provenance())
