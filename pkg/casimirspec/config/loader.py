"""Run-configuration loading, merging and validation."""

import copy
import json
import os
from typing import Any, Iterable, Optional

from ..core.errors import ConfigError
from ..core.types import ConfigDict
from ..utils.logging import log
from .defaults import DEFAULT_CONFIG, OPAQUE_KEYS

SCHEMA_VERSION = 1


def _join(prefix: str, key: str) -> str:
    return f"{prefix}.{key}" if prefix else key


def _check_value(path: str, default: Any, value: Any) -> None:
    """按默认值的类型检查用户值；默认为 None 的键接受任意值"""
    if default is None or value is None or path in OPAQUE_KEYS:
        return
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"config key '{path}' must be a boolean, got {value!r}")
    elif isinstance(default, (int, float)):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"config key '{path}' must be a number, got {value!r}")
        if isinstance(default, int) and not isinstance(value, int) and not float(value).is_integer():
            raise ConfigError(f"config key '{path}' must be an integer, got {value!r}")
    elif isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigError(f"config key '{path}' must be a string, got {value!r}")
    elif isinstance(default, list):
        if not isinstance(value, list):
            raise ConfigError(f"config key '{path}' must be a list, got {value!r}")
    elif isinstance(default, dict) and not isinstance(value, dict):
        raise ConfigError(f"config key '{path}' must be an object, got {value!r}")


def merge_config(base: ConfigDict, user: ConfigDict, prefix: str = "") -> ConfigDict:
    """
    把用户配置深度合并到 base 上

    Raises:
        ConfigError: 出现未知键（消息给出点分路径）或类型不符
    """
    merged = copy.deepcopy(base)
    for key, value in user.items():
        path = _join(prefix, key)
        if key not in base:
            raise ConfigError(f"unknown config key '{path}'")
        default = base[key]
        _check_value(path, default, value)
        if isinstance(default, dict) and isinstance(value, dict) and path not in OPAQUE_KEYS:
            merged[key] = merge_config(default, value, path)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _parse_override(item: str) -> tuple:
    if "=" not in item:
        raise ConfigError(f"override '{item}' must have the form key=value")
    key, raw = item.split("=", 1)
    key = key.strip()
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def set_value(config: ConfigDict, key: str, value: Any) -> ConfigDict:
    """按点分路径设置单个键，经过与配置文件相同的校验"""
    nested: Any = value
    for part in reversed(key.split(".")):
        nested = {part: nested}
    return merge_config(config, nested)


def apply_overrides(config: ConfigDict, overrides: Iterable[str]) -> ConfigDict:
    """应用 `a.b.c=value` 形式的命令行覆盖，value 按 JSON 解析，失败时视为字符串"""
    for item in overrides:
        key, value = _parse_override(item)
        config = set_value(config, key, value)
    return config


class ConfigLoader:
    """运行配置加载器：默认值 < 配置文件 < 命令行"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path

    def load(self, overrides: Iterable[str] = ()) -> ConfigDict:
        """
        加载并校验配置

        Raises:
            ConfigError: 文件无法读取、JSON 无效、未知键或版本不符
        """
        config = copy.deepcopy(DEFAULT_CONFIG)
        if self.config_path:
            if not os.path.exists(self.config_path):
                raise ConfigError(f"config file not found: {self.config_path}")
            try:
                with open(self.config_path, "r", encoding="utf-8") as f:
                    user_config = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                log(f"Load config error: {e}")
                raise ConfigError(f"Failed to load config {self.config_path}: {e}")
            if not isinstance(user_config, dict):
                raise ConfigError("config file must contain a JSON object")
            config = merge_config(config, user_config)
        config = apply_overrides(config, overrides)
        if config["schema_version"] != SCHEMA_VERSION:
            raise ConfigError(
                f"config key 'schema_version' must be {SCHEMA_VERSION}, got {config['schema_version']!r}"
            )
        return config

