"""Resource and file path management."""

import os
import sys

# 设置后覆盖默认的用户数据目录（测试与 CI 使用）
HOME_ENV = "CASIMIRSPEC_HOME"


def get_user_data_dir() -> str:
    """获取用户数据目录（跨平台）"""
    override = os.environ.get(HOME_ENV)
    if override:
        return override
    if sys.platform == "win32":
        return os.path.join(os.environ.get("APPDATA", os.path.expanduser("~")), "casimirspec")
    return os.path.join(os.path.expanduser("~"), ".casimirspec")


def ensure_user_data_dir() -> str:
    data_dir = get_user_data_dir()
    os.makedirs(data_dir, exist_ok=True)
    return data_dir


def get_log_path() -> str:
    """获取日志文件路径"""
    return os.path.join(ensure_user_data_dir(), "casimirspec.log")
