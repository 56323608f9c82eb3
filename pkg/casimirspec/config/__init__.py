# Config module
from .defaults import DEFAULT_CONFIG
from .loader import ConfigLoader, apply_overrides, merge_config, set_value

__all__ = ["DEFAULT_CONFIG", "ConfigLoader", "apply_overrides", "merge_config", "set_value"]
