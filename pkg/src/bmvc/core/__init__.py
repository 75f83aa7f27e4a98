"""Core 模块导出

包含领域类型、解码配置和异常层次结构。
"""

from .config import (
    DEFAULT_SCHEDULE,
    DEFAULT_TV_ITERATIONS,
    DEFAULT_TV_WEIGHT,
    DecodeConfig,
    DecodeTrace,
    DenoiserKind,
    IterationRecord,
    format_schedule,
    parse_schedule,
)
from .exceptions import (
    BmvcError,
    ConfigValidationError,
    ContainerError,
    DegenerateMaskError,
    GeometryError,
    ImageFormatError,
    QuantizationError,
    SignalError,
)
from .model import (
    HD_BLOCK_PRESETS,
    MAX_BITS,
    MIN_BITS,
    BlockGeometry,
    Frame,
    HdPreset,
    MaskPlane,
    Measurement,
    QuantSpec,
    geometry_for_ratio,
)

__all__ = [
    # 领域类型
    "Frame",
    "MaskPlane",
    "BlockGeometry",
    "Measurement",
    "QuantSpec",
    "HdPreset",
    "HD_BLOCK_PRESETS",
    "MIN_BITS",
    "MAX_BITS",
    "geometry_for_ratio",
    # 解码配置
    "DecodeConfig",
    "DecodeTrace",
    "DenoiserKind",
    "IterationRecord",
    "DEFAULT_SCHEDULE",
    "DEFAULT_TV_WEIGHT",
    "DEFAULT_TV_ITERATIONS",
    "parse_schedule",
    "format_schedule",
    # 异常
    "BmvcError",
    "GeometryError",
    "SignalError",
    "DegenerateMaskError",
    "QuantizationError",
    "ContainerError",
    "ImageFormatError",
    "ConfigValidationError",
]
