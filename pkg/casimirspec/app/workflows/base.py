"""Shared workflow plumbing."""

import argparse
import os
from typing import Any, Dict, Optional

from ...core.state import run_state


class Workflow:
    """子命令工作流基类：持有容器，子类实现 execute"""

    name = ""

    def __init__(self, container):
        self.container = container

    @property
    def config(self) -> Dict[str, Any]:
        return self.container.config

    def provenance(self) -> Dict[str, Any]:
        return run_state.provenance()

    def output(self, args: argparse.Namespace, default: Optional[str]) -> Optional[str]:
        """--out 优先于配置中的路径"""
        return getattr(args, "out", None) or default

    def execute(self, args: argparse.Namespace) -> None:
        raise NotImplementedError

    def output_dir(self, args: argparse.Namespace) -> str:
        """报告目录：--out，否则为 paths.output_dir/<子命令>"""
        return getattr(args, "out", None) or os.path.join(self.config["paths"]["output_dir"], self.name)
