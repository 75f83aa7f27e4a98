"""单帧编解码器

把 BMVC 与两个基线统一为 `FrameCodec` 协议，码流层只依赖该协议。
"""

import logging
from typing import Protocol

import numpy as np

from ..baselines.block_cs import BlockCsOperator, block_cs_decode, block_cs_encode
from ..baselines.random_ds import RandomDsPattern, random_ds_decode, random_ds_encode
from ..config.settings import EncodeSettings
from ..container.stream import CodecId, StreamHeader
from ..core.config import DecodeConfig
from ..core.exceptions import ConfigValidationError, ContainerError
from ..core.model import BlockGeometry, Frame, Measurement, QuantSpec, geometry_for_ratio
from ..decoder.pnp import DecodeResult, decode
from ..encoder.encoder import BmvcEncoder, OpCounters, OpCounts
from ..mask.generator import build_lut, key_mask
from ..operator.bmvc_operator import BmvcOperator

logger = logging.getLogger(__name__)


class FrameCodec(Protocol):
    """单帧编解码器协议"""

    codec_id: CodecId
    seed: int
    counters: OpCounters

    @property
    def frame_shape(self) -> tuple[int, int]: ...

    @property
    def header_block(self) -> tuple[int, int]:
        """写入码流头的 (B_h, B_w)"""
        ...

    def quant_spec(self, bits: int) -> QuantSpec: ...

    def encode(self, frame: Frame) -> Measurement: ...

    def decode(
        self, y: Measurement, cfg: DecodeConfig, reference: Frame | None = None
    ) -> DecodeResult: ...


class BmvcCodec:
    """BMVC：全帧掩码调制、块求和"""

    codec_id = CodecId.BMVC

    def __init__(self, geometry: BlockGeometry, seed: int) -> None:
        self.geometry = geometry
        self.seed = seed
        self.lut = build_lut(key_mask(seed, geometry), geometry)
        self.encoder = BmvcEncoder(self.lut)
        self.counters = self.encoder.counters
        self.operator = BmvcOperator.from_lut(self.lut)

    @property
    def frame_shape(self) -> tuple[int, int]:
        return self.geometry.frame_shape

    @property
    def header_block(self) -> tuple[int, int]:
        return self.geometry.block_shape

    def quant_spec(self, bits: int) -> QuantSpec:
        return self.lut.quant_spec(bits)

    def encode(self, frame: Frame) -> Measurement:
        return self.encoder.encode(frame)

    def decode(
        self, y: Measurement, cfg: DecodeConfig, reference: Frame | None = None
    ) -> DecodeResult:
        return decode(y, self.operator, cfg, reference=reference)


class RandomDsCodec:
    """随机降采样，采样值按等效块形状排列"""

    codec_id = CodecId.RANDOM_DS

    def __init__(self, frame_shape: tuple[int, int], block: tuple[int, int], seed: int) -> None:
        self.block = block
        self.seed = seed
        self.pattern = RandomDsPattern.create(*frame_shape, block[0] * block[1], seed)
        self.counters = OpCounters()

    @property
    def frame_shape(self) -> tuple[int, int]:
        return self.pattern.frame_shape

    @property
    def header_block(self) -> tuple[int, int]:
        return self.block

    def quant_spec(self, bits: int) -> QuantSpec:
        return QuantSpec(bits=bits, y_max=1.0)

    def encode(self, frame: Frame) -> Measurement:
        y = random_ds_encode(frame, self.pattern)
        self.counters.record(OpCounts())
        return Measurement(y.reshape(self.block))

    def decode(
        self, y: Measurement, cfg: DecodeConfig, reference: Frame | None = None
    ) -> DecodeResult:
        return random_ds_decode(y.values.ravel(), self.pattern, cfg, reference=reference)


class BlockCsCodec:
    """24×24 分块压缩感知"""

    codec_id = CodecId.BLOCK_CS

    def __init__(self, operator: BlockCsOperator) -> None:
        self.operator = operator
        self.seed = operator.seed
        self.counters = OpCounters()

    @property
    def frame_shape(self) -> tuple[int, int]:
        return self.operator.frame_shape

    @property
    def header_block(self) -> tuple[int, int]:
        return self.operator.measurement_shape

    def quant_spec(self, bits: int) -> QuantSpec:
        return self.operator.quant_spec(bits)

    def encode(self, frame: Frame) -> Measurement:
        y = block_cs_encode(frame, self.operator)
        self.counters.record(OpCounts(additions=self.operator.additions))
        return y

    def decode(
        self, y: Measurement, cfg: DecodeConfig, reference: Frame | None = None
    ) -> DecodeResult:
        return block_cs_decode(y, self.operator, cfg, reference=reference)


def _bmvc_geometry(frame_shape: tuple[int, int], settings: EncodeSettings) -> BlockGeometry:
    if settings.block is not None:
        return BlockGeometry(*frame_shape, *settings.block)
    return geometry_for_ratio(*frame_shape, int(settings.ratio))  # type: ignore[arg-type]


def create_codec(frame_shape: tuple[int, int], settings: EncodeSettings) -> FrameCodec:
    """按编码设置创建编解码器

    Raises:
        GeometryError: 块尺寸不合法或找不到满足压缩比的几何
        ConfigValidationError: 未知编解码器
    """
    if settings.codec == "bmvc":
        return BmvcCodec(_bmvc_geometry(frame_shape, settings), settings.seed)
    if settings.codec == "random-ds":
        geom = _bmvc_geometry(frame_shape, settings)
        return RandomDsCodec(frame_shape, geom.block_shape, settings.seed)
    if settings.codec == "block-cs":
        if settings.block is not None:
            ratio = frame_shape[0] * frame_shape[1] / (settings.block[0] * settings.block[1])
        else:
            ratio = float(settings.ratio)  # type: ignore[arg-type]
        return BlockCsCodec(BlockCsOperator.for_ratio(*frame_shape, ratio, settings.seed))
    raise ConfigValidationError("未知的编解码器", {"codec": settings.codec})


def codec_from_header(header: StreamHeader) -> FrameCodec:
    """由码流头重建编解码器

    Raises:
        ContainerError: Block CS 种子在重建时仍需重采样（码流与实现不一致）
    """
    frame_shape = (header.frame_height, header.frame_width)
    if header.codec is CodecId.BMVC:
        geom = BlockGeometry(*frame_shape, header.block_height, header.block_width)
        return BmvcCodec(geom, header.seed)
    if header.codec is CodecId.RANDOM_DS:
        return RandomDsCodec(frame_shape, header.measurement_shape, header.seed)

    op = BlockCsOperator.create(*frame_shape, header.block_width, header.seed)
    if op.seed != header.seed:
        raise ContainerError(
            "码流中的感知矩阵种子不可逆", {"seed": header.seed, "resampled": op.seed}
        )
    return BlockCsCodec(op)


def codec_summary(codec: FrameCodec) -> dict[str, object]:
    """编解码器的可记录参数"""
    h, w = codec.frame_shape
    bh, bw = codec.header_block
    ratio = h * w / (bh * bw)
    return {
        "codec": codec.codec_id.label,
        "frame": f"{h}x{w}",
        "block": f"{bh}x{bw}",
        "compression_ratio": float(np.round(ratio, 6)),
        "seed": codec.seed,
    }
