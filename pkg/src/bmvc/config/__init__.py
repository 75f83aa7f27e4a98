"""Config 模块

YAML 设置文件加载与深合并。
"""

from .settings import (
    CODECS,
    DEFAULT_SETTINGS,
    BenchSettings,
    EncodeSettings,
    Settings,
    decode_config_from,
    load_settings,
    merge_settings,
    parse_size,
    read_settings_file,
    setting,
)

__all__ = [
    "Settings",
    "EncodeSettings",
    "BenchSettings",
    "DEFAULT_SETTINGS",
    "CODECS",
    "load_settings",
    "merge_settings",
    "read_settings_file",
    "decode_config_from",
    "parse_size",
    "setting",
]
