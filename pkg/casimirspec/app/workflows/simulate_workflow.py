"""simulate: force curve of a material against the sensing surface."""

import argparse

from ...core.errors import ConfigError
from ...domains.dielectric.io import read_numeric_csv
from ...domains.dielectric.materials import resolve_material
from ...domains.lifshitz.curves import force_curve
from ...domains.lifshitz.io import write_curve
from ...domains.lifshitz.pfa import SphereGeometry
from ...utils.logging import log
from .base import Workflow


class SimulateWorkflow(Workflow):
    """正向计算：写出曲线 CSV 与 JSON 附属文件"""

    name = "simulate"

    def execute(self, args: argparse.Namespace) -> None:
        sim = self.config["simulate"]
        spec = self.container.dataset_spec()
        if sim["separations_file"]:
            separations = read_numeric_csv(sim["separations_file"], ["d_m"])[:, 0]
        else:
            separations = spec.separations
        geom = None
        if sim["kind"] == "gradient":
            if sim["radius_m"] is None:
                raise ConfigError("config key 'simulate.radius_m' is required for gradient curves")
            geom = SphereGeometry(float(sim["radius_m"]))
        elif sim["kind"] != "pressure":
            raise ConfigError(f"config key 'simulate.kind' must be 'pressure' or 'gradient', got {sim['kind']!r}")

        sensing = resolve_material(self.config["sensing_surface"])
        material = resolve_material(sim["material"])
        log(f"Simulating {sim['kind']} curve over {len(separations)} separations")
        curve = force_curve(separations, sensing, material, spec.settings(), sim["kind"], geom)
        out = self.output(args, sim["output_file"])
        write_curve(out, curve, self.provenance())
        log(f"Wrote {out}")
