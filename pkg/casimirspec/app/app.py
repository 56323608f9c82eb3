"""Command-line entry point and exit-code mapping."""

import argparse
import logging
import sys
import traceback
import warnings
from typing import List, Optional

from .. import __app_name__, __version__
from ..config.loader import ConfigLoader, set_value
from ..core.errors import CasimirSpecError, PfaApplicabilityWarning
from ..core.types import ConfigDict
from ..utils.logging import log, set_verbosity
from .wiring import Container

SUBCOMMANDS = ("simulate", "generate", "train", "reconstruct", "sweep", "experiment", "realistic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=__app_name__,
        description="Reconstruct broadband permittivity from Casimir force-distance curves.",
    )
    parser.add_argument("--version", action="version", version=f"{__app_name__} {__version__}")
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument("--seed", type=int, help="override config key 'seed'")
    parser.add_argument("--workers", type=int, help="parallel workers (0 = all physical cores)")
    parser.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config key, e.g. dataset.n_samples=200 (repeatable)")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug output on stderr")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(SUBCOMMANDS) + "}")
    sub.required = True

    p = sub.add_parser("simulate", help="compute a pressure or gradient curve")
    p.add_argument("--material", help="material preset name (overrides simulate.material)")
    p.add_argument("--separations-file", help="CSV with a single column d_m")
    p.add_argument("--out", help="output curve CSV (a JSON sidecar is written next to it)")

    p = sub.add_parser("generate", help="generate a synthetic dataset directory")
    p.add_argument("--out", help="dataset directory")

    p = sub.add_parser("train", help="grid search and fit the forest")
    p.add_argument("--dataset", help="dataset directory")
    p.add_argument("--out", help="model file (grid_scores.csv is written next to it)")

    p = sub.add_parser("reconstruct", help="reconstruct a spectrum from a curve file")
    p.add_argument("--model", help="forest.json")
    p.add_argument("--curve", help="curve CSV with JSON sidecar")
    p.add_argument("--out", help="spectrum CSV")

    p = sub.add_parser("sweep", help="reconstruction error as a function of d_max")
    p.add_argument("--out", help="report directory")

    p = sub.add_parser("experiment", help="reconstruct from a measured gradient file")
    p.add_argument("--measured", help="measured CSV d_m,gradient_N_per_m[,sigma_N_per_m] with JSON sidecar")
    p.add_argument("--control", action="store_true", help="synthesise the measurement from experiment.control")
    p.add_argument("--out", help="report directory")

    p = sub.add_parser("realistic", help="reconstruct a preset metal spectrum")
    p.add_argument("--material", help="material preset name (overrides realistic.material)")
    p.add_argument("--out", help="report directory")
    return parser


def load_config(args: argparse.Namespace) -> ConfigDict:
    """优先级：命令行 > 配置文件 > 默认值"""
    config = ConfigLoader(args.config).load(args.overrides)
    if args.seed is not None:
        config = set_value(config, "seed", args.seed)
    if args.workers is not None:
        config = set_value(config, "workers", args.workers)
    material = getattr(args, "material", None)
    if material:
        config = set_value(config, f"{args.command}.material", material)
    separations_file = getattr(args, "separations_file", None)
    if separations_file:
        config = set_value(config, "simulate.separations_file", separations_file)
    return config


def run(argv: Optional[List[str]] = None) -> int:
    """
    解析参数并执行子命令

    Returns:
        退出码：0 成功；2 配置错误；3 输入数据错误；4 数值不收敛；1 其他错误
    """
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_verbosity(logging.DEBUG)
    elif args.quiet:
        set_verbosity(logging.WARNING)
    try:
        container = Container(load_config(args))
        with warnings.catch_warnings():
            warnings.simplefilter("default", PfaApplicabilityWarning)
            container.get_workflow(args.command).execute(args)
    except CasimirSpecError as e:
        log(f"{type(e).__name__}: {e}", logging.ERROR)
        return e.exit_code
    except KeyboardInterrupt:
        log("Interrupted by user", logging.WARNING)
        return 130
    except Exception as e:
        log(f"Fatal error: {e}\n{traceback.format_exc()}", logging.ERROR)
        return 1
    return 0


def main() -> None:
    """应用程序主入口点"""
    sys.exit(run())


if __name__ == "__main__":
    main()
