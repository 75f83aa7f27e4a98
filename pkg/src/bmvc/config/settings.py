"""运行设置

内置默认值可被 YAML 设置文件覆盖：PyYAML safe_load 读取，
pydash 深合并到默认值之上，再构造经过校验的数据类。
"""

import copy
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import pydash
import yaml

from ..core.config import DecodeConfig, format_schedule
from ..core.exceptions import ConfigValidationError
from ..core.model import MAX_BITS, MIN_BITS

logger = logging.getLogger(__name__)

CODECS = ("bmvc", "random-ds", "block-cs")
_BLOCK = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")

DEFAULT_SETTINGS: dict[str, Any] = {
    "encode": {
        "codec": "bmvc",
        "block": None,
        "ratio": 16,
        "bits": 8,
        "seed": 42,
        "chroma_factor": 4,
        "color": False,
    },
    "decode": {
        "schedule": format_schedule(DecodeConfig().sigma_schedule),
        "denoiser": "tv",
        "tv_weight": DecodeConfig().tv_weight,
        "tv_iterations": DecodeConfig().tv_iterations,
        "final_projection": True,
    },
    "bench": {
        "codecs": ["bmvc"],
        "ratios": [4, 16, 64],
        "bits": [8],
        "workers": 1,
        "seed": 42,
        "image_size": 64,
        "image_count": 5,
    },
}


def parse_size(text: str) -> tuple[int, int]:
    """解析 "HxW" 形式的尺寸

    Raises:
        ConfigValidationError: 格式无效或尺寸为零
    """
    match = _BLOCK.match(text)
    if match is None:
        raise ConfigValidationError("尺寸格式应为 HxW", {"value": text})
    h, w = int(match.group(1)), int(match.group(2))
    if h < 1 or w < 1:
        raise ConfigValidationError("尺寸必须为正整数", {"value": text})
    return h, w


def _check_codec(codec: str) -> None:
    if codec not in CODECS:
        raise ConfigValidationError("未知的编解码器", {"codec": codec, "choices": CODECS})


def _check_bits(bits: int) -> None:
    if not MIN_BITS <= bits <= MAX_BITS:
        raise ConfigValidationError(f"位深必须位于 [{MIN_BITS}, {MAX_BITS}]", {"bits": bits})


@dataclass(frozen=True)
class EncodeSettings:
    """编码设置

    Attributes:
        codec: bmvc / random-ds / block-cs
        block: BMVC 块尺寸，None 时按 ratio 自动选择
        ratio: 目标压缩比
        bits: 量化位深
        seed: 掩码种子
        chroma_factor: 色度下采样因子
        color: 是否按 YUV 编码彩色输入
    """

    codec: str = "bmvc"
    block: tuple[int, int] | None = None
    ratio: int | None = 16
    bits: int = 8
    seed: int = 42
    chroma_factor: int = 4
    color: bool = False

    def __post_init__(self) -> None:
        _check_codec(self.codec)
        _check_bits(self.bits)
        if isinstance(self.block, str):
            object.__setattr__(self, "block", parse_size(self.block))
        elif self.block is not None:
            object.__setattr__(self, "block", tuple(int(v) for v in self.block))
        if self.block is None and self.ratio is None:
            raise ConfigValidationError("必须给出块尺寸或压缩比")
        if self.ratio is not None and self.ratio < 1:
            raise ConfigValidationError("压缩比必须为正整数", {"ratio": self.ratio})
        if not 0 <= self.seed < 2**64:
            raise ConfigValidationError("种子必须是 64 位无符号整数", {"seed": self.seed})
        if not 1 <= self.chroma_factor <= 255:
            raise ConfigValidationError("色度因子必须位于 [1, 255]", {"chroma_factor": self.chroma_factor})

    def to_dict(self) -> dict[str, Any]:
        return {
            "codec": self.codec,
            "block": None if self.block is None else f"{self.block[0]}x{self.block[1]}",
            "ratio": self.ratio,
            "bits": self.bits,
            "seed": self.seed,
            "chroma_factor": self.chroma_factor,
            "color": self.color,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EncodeSettings":
        try:
            return cls(**data)
        except TypeError as e:
            raise ConfigValidationError(f"编码设置无效: {e}") from e


@dataclass(frozen=True)
class BenchSettings:
    """基准测试设置

    Attributes:
        codecs: 参与比较的编解码器
        ratios: 压缩比网格
        bits: 位深网格
        workers: 并行进程数
        seed: 掩码与合成图像种子
        image_size: 合成测试图像边长
        image_count: 合成测试图像数量
    """

    codecs: tuple[str, ...] = ("bmvc",)
    ratios: tuple[int, ...] = (4, 16, 64)
    bits: tuple[int, ...] = (8,)
    workers: int = 1
    seed: int = 42
    image_size: int = 64
    image_count: int = 5

    def __post_init__(self) -> None:
        for name in ("codecs", "ratios", "bits"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.codecs:
            raise ConfigValidationError("编解码器列表不能为空")
        for codec in self.codecs:
            _check_codec(codec)
        if not self.ratios or any(r < 1 for r in self.ratios):
            raise ConfigValidationError("压缩比列表必须非空且为正", {"ratios": self.ratios})
        if not self.bits:
            raise ConfigValidationError("位深列表不能为空")
        for bits in self.bits:
            _check_bits(bits)
        if self.workers < 1:
            raise ConfigValidationError("workers 必须至少为 1", {"workers": self.workers})
        if self.image_size < 11 or self.image_count < 1:
            raise ConfigValidationError(
                "合成图像尺寸至少为 11、数量至少为 1",
                {"image_size": self.image_size, "image_count": self.image_count},
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "codecs": list(self.codecs),
            "ratios": list(self.ratios),
            "bits": list(self.bits),
            "workers": self.workers,
            "seed": self.seed,
            "image_size": self.image_size,
            "image_count": self.image_count,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "BenchSettings":
        try:
            return cls(**data)
        except TypeError as e:
            raise ConfigValidationError(f"基准设置无效: {e}") from e


def decode_config_from(section: dict[str, Any]) -> DecodeConfig:
    data = dict(section)
    if "schedule" in data:
        data["sigma_schedule"] = data.pop("schedule")
    return DecodeConfig.from_dict(data)


@dataclass(frozen=True)
class Settings:
    encode: EncodeSettings = field(default_factory=EncodeSettings)
    decode: DecodeConfig = field(default_factory=DecodeConfig)
    bench: BenchSettings = field(default_factory=BenchSettings)


def merge_settings(*configs: dict[str, Any]) -> dict[str, Any]:
    """深合并多个设置字典，后者覆盖前者；列表整体替换而不是逐项合并"""
    result: dict[str, Any] = {}
    for config in configs:
        result = pydash.merge_with(
            result,
            copy.deepcopy(config),
            lambda _, src: list(src) if isinstance(src, (list, tuple)) else None,
        )
    return result


def read_settings_file(path: Path) -> dict[str, Any]:
    """读取 YAML 设置文件

    Raises:
        ConfigValidationError: 文件不存在、YAML 无效或顶层不是映射
    """
    if not path.exists():
        raise ConfigValidationError("设置文件不存在", {"path": str(path)})
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigValidationError(f"设置文件不是有效的 YAML: {e}", {"path": str(path)}) from e
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigValidationError("设置文件顶层必须是映射", {"path": str(path)})
    unknown = set(data) - set(DEFAULT_SETTINGS)
    if unknown:
        raise ConfigValidationError("设置文件包含未知分区", {"sections": sorted(unknown)})
    logger.debug("已加载设置文件 %s", path)
    return data


def load_settings(
    path: Path | None = None, overrides: dict[str, Any] | None = None
) -> Settings:
    """按 默认值 < 设置文件 < 覆盖项 的顺序合并并构造设置"""
    layers = [DEFAULT_SETTINGS]
    if path is not None:
        layers.append(read_settings_file(path))
    if overrides:
        layers.append(overrides)
    merged = merge_settings(*layers)
    return Settings(
        encode=EncodeSettings.from_dict(pydash.get(merged, "encode", {})),
        decode=decode_config_from(pydash.get(merged, "decode", {})),
        bench=BenchSettings.from_dict(pydash.get(merged, "bench", {})),
    )


def setting(data: dict[str, Any], dotted: str, default: Any = None) -> Any:
    """按点分路径读取设置值，如 "decode.tv_weight" """
    return pydash.get(data, dotted, default)
