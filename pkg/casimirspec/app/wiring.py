"""Config-to-domain wiring and workflow container."""

from typing import Any, Dict, Optional

from ..core.errors import ConfigError
from ..core.state import run_state
from ..core.types import ConfigDict
from ..domains.analysis.sweep import SweepSpec
from ..domains.dielectric.grid import FrequencyGrid
from ..domains.inversion.tree import Hyperparams
from ..domains.synth.dataset import DatasetSpec, default_separations
from ..domains.synth.sampling import SamplingRanges
from .workflows.experiment_workflow import ExperimentWorkflow
from .workflows.generate_workflow import GenerateWorkflow
from .workflows.realistic_workflow import RealisticWorkflow
from .workflows.reconstruct_workflow import ReconstructWorkflow
from .workflows.simulate_workflow import SimulateWorkflow
from .workflows.sweep_workflow import SweepWorkflow
from .workflows.train_workflow import TrainWorkflow


class Container:
    """依赖注入容器：把合并后的配置翻译为领域对象，并持有各子命令工作流"""

    def __init__(self, config: ConfigDict):
        self.config = config
        run_state.config = config

        self.workflows = {
            "simulate": SimulateWorkflow(self),
            "generate": GenerateWorkflow(self),
            "train": TrainWorkflow(self),
            "reconstruct": ReconstructWorkflow(self),
            "sweep": SweepWorkflow(self),
            "experiment": ExperimentWorkflow(self),
            "realistic": RealisticWorkflow(self),
        }

    @property
    def seed(self) -> int:
        seed = self.config["seed"]
        if not isinstance(seed, int) or not 0 <= seed < 2**64:
            raise ConfigError(f"config key 'seed' must be a 64-bit unsigned integer, got {seed!r}")
        return seed

    @property
    def workers(self) -> Optional[int]:
        return self.config["workers"]

    def get_workflow(self, name: str):
        run_state.subcommand = name
        return self.workflows[name]

    def sampling_ranges(self, overrides: Optional[Dict[str, Any]] = None) -> SamplingRanges:
        data = dict(self.config["sampling"])
        data.update(overrides or {})
        return SamplingRanges.from_dict(data)

    def separations(self):
        sep = self.config["dataset"]["separations"]
        return default_separations(sep["d_min_m"], sep["d_max_m"], sep["n_points"])

    def grid(self) -> FrequencyGrid:
        g = self.config["dataset"]["grid"]
        return FrequencyGrid.logspace(g["omega_min_rad_s"], g["omega_max_rad_s"], g["n_points"])

    def dataset_spec(self, ranges: Optional[SamplingRanges] = None) -> DatasetSpec:
        ds = self.config["dataset"]
        return DatasetSpec(
            n_samples=ds["n_samples"],
            separations=self.separations(),
            grid=self.grid(),
            ranges=ranges or self.sampling_ranges(),
            temperature=float(ds["temperature_K"]),
            curve_kind=ds["curve_kind"],
            sphere_radius=ds["sphere_radius_m"],
            seed=self.seed,
            sensing_surface=self.config["sensing_surface"],
            term_tolerance=float(ds["term_tolerance"]),
            quadrature_tolerance=float(ds["quadrature_tolerance"]),
        )

    def hyperparams(self) -> Hyperparams:
        return Hyperparams.from_dict(self.config["hyperparams"])

    def validation_fraction(self) -> float:
        return float(self.config["split"]["validation_fraction"])

    def sweep_spec(self) -> SweepSpec:
        sw = self.config["sweep"]
        return SweepSpec(self.dataset_spec(), tuple(sw["d_max_m"]), float(sw["d_min_m"]), self.seed,
                         self.validation_fraction())

    def realistic_spec(self) -> DatasetSpec:
        """Drude+Lorentz 采样（realistic 段覆盖 p_drude 与振子数）"""
        r = self.config["realistic"]
        ranges = self.sampling_ranges({"p_drude": r["p_drude"], "n_oscillators": r["n_oscillators"]})
        return self.dataset_spec(ranges)
