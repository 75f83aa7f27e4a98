"""码流级编解码

多帧（视频）共享同一掩码写入一个码流；彩色输入只对 Y 平面做 BMVC，
U/V 平面盒式下采样后以尺度 1.0 直接量化。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..color.yuv import chroma_down, chroma_up, rgb_to_yuv, yuv_to_rgb
from ..config.settings import EncodeSettings
from ..container.stream import ColorMode, EncodedFrame, EncodedStream, StreamHeader
from ..core.config import DecodeConfig, DecodeTrace
from ..core.exceptions import GeometryError, ImageFormatError
from ..core.model import Frame, QuantSpec
from ..encoder.quantizer import dequantize, quantize
from .factory import FrameCodec, codec_from_header, create_codec

logger = logging.getLogger(__name__)

CHROMA_SCALE = 1.0


@dataclass
class EncodeStats:
    """编码统计

    Attributes:
        frames: 帧数
        additions: 编码器计数器累计的加法次数
        multiplications: 编码器计数器累计的乘法次数（BMVC 恒为 0）
        stream_bytes: 码流总字节数
        compression_ratio: 亮度压缩比
    """

    frames: int
    additions: int
    multiplications: int
    stream_bytes: int
    compression_ratio: float


@dataclass
class DecodedFrame:
    """解码后的一帧

    Attributes:
        luma: Y 平面（灰度流即整幅图像）
        trace: PnP 迭代轨迹
        rgb: 彩色流重建的 RGB 图像
    """

    luma: Frame
    trace: DecodeTrace = field(default_factory=DecodeTrace)
    rgb: np.ndarray | None = None

    @property
    def image(self) -> np.ndarray:
        return self.rgb if self.rgb is not None else self.luma.data


def _split_planes(
    image: np.ndarray, color: bool
) -> tuple[np.ndarray, tuple[np.ndarray, np.ndarray] | None]:
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim == 2:
        if color:
            raise ImageFormatError("彩色模式需要 RGB 输入", {"shape": arr.shape})
        return arr, None
    y, u, v = rgb_to_yuv(arr)
    # 矩阵系数之和的舍入误差可能让 Y 略微超出 1
    y = np.clip(y, 0.0, 1.0)
    return y, ((u, v) if color else None)


def encode_frames(
    images: list[np.ndarray], settings: EncodeSettings
) -> tuple[EncodedStream, EncodeStats, FrameCodec]:
    """编码一组同尺寸图像

    Args:
        images: [0, 1] 的灰度 (H, W) 或 RGB (H, W, 3) 图像
        settings: 编码设置

    Returns:
        (码流, 统计, 使用的编解码器)

    Raises:
        GeometryError: 图像尺寸不一致或几何不合法
        ImageFormatError: 彩色模式下输入不是 RGB
        SignalError: 像素超出 [0, 1]
    """
    if not images:
        raise GeometryError("至少需要一帧输入")
    shapes = {np.shape(img)[:2] for img in images}
    if len(shapes) != 1:
        raise GeometryError("所有帧的尺寸必须一致", {"shapes": sorted(shapes)})
    frame_shape = shapes.pop()

    codec = create_codec(frame_shape, settings)
    spec = codec.quant_spec(settings.bits)
    chroma_spec = QuantSpec(bits=settings.bits, y_max=CHROMA_SCALE)
    color_mode = ColorMode.YUV if settings.color else ColorMode.GRAY
    factor = settings.chroma_factor if settings.color else 1

    frames = []
    for image in images:
        luma, chroma = _split_planes(image, settings.color)
        codes = quantize(codec.encode(Frame(luma)), spec)
        chroma_codes = None
        if chroma is not None:
            chroma_codes = tuple(
                quantize(np.clip(chroma_down(p, factor), 0.0, 1.0), chroma_spec) for p in chroma
            )
        frames.append(EncodedFrame(luma=codes, chroma=chroma_codes))  # type: ignore[arg-type]

    block_height, block_width = codec.header_block
    header = StreamHeader(
        codec=codec.codec_id,
        frame_height=frame_shape[0],
        frame_width=frame_shape[1],
        block_height=block_height,
        block_width=block_width,
        seed=codec.seed,
        bits=settings.bits,
        color_mode=color_mode,
        chroma_factor=factor,
        frame_count=len(frames),
    )
    counts = codec.counters.total
    stats = EncodeStats(
        frames=len(frames),
        additions=counts.additions,
        multiplications=counts.multiplications,
        stream_bytes=header.stream_size,
        compression_ratio=header.compression_ratio,
    )
    logger.info(
        "编码完成: codec=%s, frames=%d, Cr=%.2f, bytes=%d",
        codec.codec_id.label,
        stats.frames,
        stats.compression_ratio,
        stats.stream_bytes,
    )
    return EncodedStream(header=header, frames=frames), stats, codec


def decode_stream(
    stream: EncodedStream,
    cfg: DecodeConfig | None = None,
    *,
    references: list[np.ndarray] | None = None,
    workers: int = 1,
) -> list[DecodedFrame]:
    """解码码流中的全部帧

    各帧相互独立，workers > 1 时共享同一个不可变算子并发解码。

    Args:
        stream: 码流
        cfg: 解码配置
        references: 与帧一一对应的参考图像（只使用 Y 平面），用于轨迹中的 PSNR
        workers: 并发线程数

    Raises:
        GeometryError: 参考图像数量或尺寸不匹配
        QuantizationError: 码值越界
    """
    cfg = cfg or DecodeConfig()
    header = stream.header
    if references is not None and len(references) != len(stream.frames):
        raise GeometryError(
            "参考图像数量与帧数不一致",
            {"references": len(references), "frames": len(stream.frames)},
        )
    codec = codec_from_header(header)
    spec = codec.quant_spec(header.bits)
    chroma_spec = QuantSpec(bits=header.bits, y_max=CHROMA_SCALE)

    def run(index: int) -> DecodedFrame:
        encoded = stream.frames[index]
        reference = None
        if references is not None:
            reference = Frame(_split_planes(references[index], False)[0])
        result = codec.decode(dequantize(encoded.luma, spec), cfg, reference)

        rgb = None
        if header.color_mode is ColorMode.YUV and encoded.chroma is not None:
            u, v = (
                chroma_up(dequantize(p, chroma_spec).values, header.chroma_factor)
                for p in encoded.chroma
            )
            rgb = np.clip(yuv_to_rgb(result.frame.data, u, v), 0.0, 1.0)
        return DecodedFrame(luma=result.frame, trace=result.trace, rgb=rgb)

    indices = range(len(stream.frames))
    if workers > 1 and len(stream.frames) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            decoded = list(executor.map(run, indices))
    else:
        decoded = [run(i) for i in indices]
    logger.info("解码完成: frames=%d, schedule iterations=%d", len(decoded), cfg.iterations)
    return decoded
