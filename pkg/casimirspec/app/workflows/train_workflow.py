"""train: grid search, final fit and validation scoring."""

import argparse
import os

from ...domains.analysis.report import evaluate
from ...domains.inversion.forest import fit_forest
from ...domains.inversion.io import write_forest, write_grid_scores
from ...domains.inversion.search import grid_search
from ...domains.synth.io import read_dataset
from ...utils.fs import atomic_files
from ...utils.logging import log
from .base import Workflow

GRID_SCORES_FILE = "grid_scores.csv"


class TrainWorkflow(Workflow):
    """训练工作流：只使用训练划分，验证划分仅用于最终评分"""

    name = "train"

    def execute(self, args: argparse.Namespace) -> None:
        paths = self.config["paths"]
        dataset = read_dataset(getattr(args, "dataset", None) or paths["dataset_dir"])
        train = dataset.train_view()
        hyper = self.container.hyperparams()
        seed = self.container.seed
        workers = self.container.workers

        gs = self.config["grid_search"]
        table = []
        if gs["enabled"]:
            hyper, table = grid_search(train, gs["grid"], gs["folds"], seed, gs["holdout_fraction"],
                                       hyper, workers)
        forest = fit_forest(train, hyper, seed, workers, dataset_hash=dataset.spec.spec_hash())

        report = evaluate(forest, dataset.validation_view(), train, seed)
        log(f"Validation R2 (transformed space) = {report.validation_r2!r}, "
            f"mean baseline R2 = {report.baseline_r2!r}")
        provenance = self.provenance()
        provenance["validation_r2"] = report.validation_r2
        provenance["baseline_r2"] = report.baseline_r2

        model_file = self.output(args, paths["model_file"])
        scores_file = os.path.join(os.path.dirname(os.path.abspath(model_file)), GRID_SCORES_FILE)
        with atomic_files(model_file, scores_file) as (tmp_model, tmp_scores):
            write_forest(tmp_model, forest, provenance)
            write_grid_scores(tmp_scores, table)
        log(f"Wrote {model_file}")
