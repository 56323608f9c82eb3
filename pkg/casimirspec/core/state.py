"""Per-run state shared by the workflows."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .. import __app_name__, __version__


@dataclass
class RunState:
    """当前运行的子命令与合并后的配置"""

    subcommand: Optional[str] = None
    config: Dict[str, Any] = field(default_factory=dict)

    def provenance(self) -> Dict[str, Any]:
        """
        写入每个输出附属文件的来源信息

        不含时间戳与 workers，输出与并行度无关且可逐字节复现。
        """
        config = {k: v for k, v in self.config.items() if k != "workers"}
        return {
            "app": __app_name__,
            "version": __version__,
            "subcommand": self.subcommand,
            "config": config,
        }


# 全局状态实例
run_state = RunState()
