"""reconstruct: apply a trained forest to a force curve."""

import argparse

from ...core.errors import ConfigError
from ...domains.dielectric.io import write_spectrum_csv
from ...domains.inversion.forest import predict
from ...domains.inversion.io import read_forest
from ...domains.lifshitz.io import read_curve, sidecar_path
from ...utils.fs import atomic_files, write_json
from ...utils.logging import log
from .base import Workflow


class ReconstructWorkflow(Workflow):
    name = "reconstruct"

    def execute(self, args: argparse.Namespace) -> None:
        paths = self.config["paths"]
        curve_file = getattr(args, "curve", None) or paths["curve_file"]
        if not curve_file:
            raise ConfigError("config key 'paths.curve_file' (or --curve) is required")
        forest = read_forest(getattr(args, "model", None) or paths["model_file"])
        curve = read_curve(curve_file)
        spectrum = predict(forest, curve)
        out = self.output(args, paths["spectrum_file"])
        with atomic_files(out, sidecar_path(out)) as (tmp_csv, tmp_json):
            write_spectrum_csv(tmp_csv, spectrum)
            write_json(tmp_json, {"provenance": self.provenance(), "model_metadata": forest.metadata})
        log(f"Wrote {out}")
