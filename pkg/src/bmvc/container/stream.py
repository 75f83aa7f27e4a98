"""BMVC 码流容器

布局（全部大端）：
    magic "BMVC" | version u8 | codec u8 | N_h N_w B_h B_w u16 | seed u64 |
    bits u8 | color u8 | chroma factor u8 | frame count u32 | codes u16...

每帧依次存放亮度码值 (B_h·B_w 个)，彩色模式下再跟随 U、V 两个
(N_h/f)·(N_w/f) 的色度平面。掩码只通过种子传递，从不写入码流。
"""

import struct
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path

import numpy as np

from ..core.exceptions import BmvcError, ContainerError
from ..core.model import MAX_BITS, MIN_BITS, BlockGeometry

MAGIC = b"BMVC"
VERSION = 1
HEADER = struct.Struct(">4sBBHHHHQBBBI")
HEADER_SIZE = HEADER.size
CODE_DTYPE = np.dtype(">u2")

CS_BLOCK = 24
CS_BLOCK_PIXELS = CS_BLOCK * CS_BLOCK


class CodecId(IntEnum):
    BMVC = 0
    RANDOM_DS = 1
    BLOCK_CS = 2

    @property
    def label(self) -> str:
        return {0: "bmvc", 1: "random-ds", 2: "block-cs"}[int(self)]

    @classmethod
    def from_label(cls, label: str) -> "CodecId":
        for codec in cls:
            if codec.label == label:
                return codec
        raise ValueError(f"未知的编解码器: {label}")


class ColorMode(IntEnum):
    GRAY = 0
    YUV = 1


@dataclass(frozen=True)
class StreamHeader:
    """码流头

    (B_h, B_w) 的含义随编解码器变化：
    BMVC 为块尺寸；RandomDS 为等效 BMVC 块尺寸，采样数 B_h·B_w；
    BlockCS 为测量数组形状 (块数, M)。

    Raises:
        ContainerError: 任一字段违反不变量
    """

    codec: CodecId
    frame_height: int
    frame_width: int
    block_height: int
    block_width: int
    seed: int
    bits: int
    color_mode: ColorMode = ColorMode.GRAY
    chroma_factor: int = 1
    frame_count: int = 1
    version: int = VERSION

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "codec", CodecId(self.codec))
            object.__setattr__(self, "color_mode", ColorMode(self.color_mode))
        except ValueError as e:
            raise ContainerError(f"码流头字段无效: {e}") from e
        self._validate()

    def _validate(self) -> None:
        if self.version != VERSION:
            raise ContainerError("不支持的码流版本", {"version": self.version})
        dims = (self.frame_height, self.frame_width, self.block_height, self.block_width)
        if any(not 1 <= d <= 0xFFFF for d in dims):
            raise ContainerError("尺寸必须位于 [1, 65535]", {"dims": dims})
        if not 0 <= self.seed < 2**64:
            raise ContainerError("种子必须是 64 位无符号整数", {"seed": self.seed})
        if not MIN_BITS <= self.bits <= MAX_BITS:
            raise ContainerError(f"位深必须位于 [{MIN_BITS}, {MAX_BITS}]", {"bits": self.bits})
        if not 0 <= self.frame_count < 2**32:
            raise ContainerError("帧数越界", {"frame_count": self.frame_count})
        if not 1 <= self.chroma_factor <= 0xFF:
            raise ContainerError("色度因子必须位于 [1, 255]", {"chroma_factor": self.chroma_factor})
        if self.color_mode is ColorMode.YUV and (
            self.frame_height % self.chroma_factor or self.frame_width % self.chroma_factor
        ):
            raise ContainerError(
                "色度因子必须整除帧尺寸",
                {"frame": (self.frame_height, self.frame_width), "factor": self.chroma_factor},
            )

        if self.codec is CodecId.BMVC:
            try:
                BlockGeometry(*dims)
            except BmvcError as e:
                raise ContainerError(f"BMVC 几何无效: {e.message}", e.details) from e
        elif self.codec is CodecId.RANDOM_DS:
            if self.luma_codes > self.frame_height * self.frame_width:
                raise ContainerError(
                    "采样数超过像素数",
                    {"samples": self.luma_codes, "pixels": self.frame_height * self.frame_width},
                )
        else:
            if self.frame_height % CS_BLOCK or self.frame_width % CS_BLOCK:
                raise ContainerError("分块 CS 要求帧尺寸是 24 的倍数", {"dims": dims})
            blocks = (self.frame_height // CS_BLOCK) * (self.frame_width // CS_BLOCK)
            if self.block_height != blocks or self.block_width > CS_BLOCK_PIXELS:
                raise ContainerError(
                    "分块 CS 测量形状无效",
                    {"expected_blocks": blocks, "shape": (self.block_height, self.block_width)},
                )

    @property
    def levels(self) -> int:
        return (1 << self.bits) - 1

    @property
    def measurement_shape(self) -> tuple[int, int]:
        return (self.block_height, self.block_width)

    @property
    def chroma_shape(self) -> tuple[int, int]:
        return (self.frame_height // self.chroma_factor, self.frame_width // self.chroma_factor)

    @property
    def luma_codes(self) -> int:
        return self.block_height * self.block_width

    @property
    def chroma_codes(self) -> int:
        """每帧两个色度平面的码值数"""
        if self.color_mode is ColorMode.GRAY:
            return 0
        h, w = self.chroma_shape
        return 2 * h * w

    @property
    def frame_codes(self) -> int:
        return self.luma_codes + self.chroma_codes

    @property
    def payload_size(self) -> int:
        """负载字节数 2·(亮度 + 色度)·帧数"""
        return 2 * self.frame_codes * self.frame_count

    @property
    def stream_size(self) -> int:
        return HEADER_SIZE + self.payload_size

    @property
    def compression_ratio(self) -> float:
        """亮度平面的压缩比 N / 码值数"""
        return self.frame_height * self.frame_width / self.luma_codes

    def pack(self) -> bytes:
        return HEADER.pack(
            MAGIC,
            self.version,
            int(self.codec),
            self.frame_height,
            self.frame_width,
            self.block_height,
            self.block_width,
            self.seed,
            self.bits,
            int(self.color_mode),
            self.chroma_factor,
            self.frame_count,
        )

    @classmethod
    def unpack(cls, data: bytes) -> "StreamHeader":
        """解析码流头

        Raises:
            ContainerError: 长度不足、魔数或版本不可识别、字段违反不变量
        """
        if len(data) < HEADER_SIZE:
            raise ContainerError("码流头被截断", {"length": len(data), "required": HEADER_SIZE})
        (magic, version, codec, nh, nw, bh, bw, seed, bits, color, factor, count) = (
            HEADER.unpack_from(data, 0)
        )
        if magic != MAGIC:
            raise ContainerError("魔数不匹配", {"magic": magic.hex()})
        if version != VERSION:
            raise ContainerError("不支持的码流版本", {"version": version})
        return cls(
            codec=codec,
            frame_height=nh,
            frame_width=nw,
            block_height=bh,
            block_width=bw,
            seed=seed,
            bits=bits,
            color_mode=color,
            chroma_factor=factor,
            frame_count=count,
            version=version,
        )


@dataclass(frozen=True, eq=False)
class EncodedFrame:
    """单帧码值

    Attributes:
        luma: 亮度码值，形状为测量形状
        chroma: 彩色模式下的 (U, V) 码值平面
    """

    luma: np.ndarray
    chroma: tuple[np.ndarray, np.ndarray] | None = None

    def codes(self) -> np.ndarray:
        parts = [np.asarray(self.luma).ravel()]
        if self.chroma is not None:
            parts.extend(np.asarray(p).ravel() for p in self.chroma)
        return np.concatenate(parts)


@dataclass
class EncodedStream:
    header: StreamHeader
    frames: list[EncodedFrame] = field(default_factory=list)


def _check_frame(header: StreamHeader, index: int, frame: EncodedFrame) -> np.ndarray:
    if np.shape(frame.luma) != header.measurement_shape:
        raise ContainerError(
            "亮度码值尺寸不匹配",
            {"frame": index, "expected": header.measurement_shape, "actual": np.shape(frame.luma)},
        )
    has_chroma = frame.chroma is not None
    if has_chroma != (header.color_mode is ColorMode.YUV):
        raise ContainerError("色度平面与颜色模式不一致", {"frame": index})
    if has_chroma:
        for plane in frame.chroma:  # type: ignore[union-attr]
            if np.shape(plane) != header.chroma_shape:
                raise ContainerError(
                    "色度码值尺寸不匹配",
                    {"frame": index, "expected": header.chroma_shape, "actual": np.shape(plane)},
                )
    codes = frame.codes()
    if codes.size and (int(codes.min()) < 0 or int(codes.max()) > header.levels):
        raise ContainerError("码值超出位深范围", {"frame": index, "levels": header.levels})
    return codes


def write_stream(header: StreamHeader, frames: list[EncodedFrame]) -> bytes:
    """序列化码流

    Raises:
        ContainerError: 帧数或码值数量与头部不一致
    """
    if len(frames) != header.frame_count:
        raise ContainerError(
            "帧数与码流头不一致", {"header": header.frame_count, "actual": len(frames)}
        )
    chunks = [header.pack()]
    for index, frame in enumerate(frames):
        codes = _check_frame(header, index, frame)
        chunks.append(codes.astype(CODE_DTYPE).tobytes())
    return b"".join(chunks)


def read_stream(data: bytes) -> EncodedStream:
    """解析码流，要么得到完整有效的结构，要么抛出 ContainerError

    负载长度在分配内存前与头部声明的尺寸精确比对。
    """
    header = StreamHeader.unpack(data)
    if len(data) != header.stream_size:
        raise ContainerError(
            "负载长度与码流头不一致",
            {"expected": header.stream_size, "actual": len(data)},
        )

    codes = np.frombuffer(data, dtype=CODE_DTYPE, offset=HEADER_SIZE).astype(np.uint16)
    if codes.size and int(codes.max()) > header.levels:
        raise ContainerError("码值超出位深范围", {"levels": header.levels})

    frames = []
    per_frame = codes.reshape(header.frame_count, header.frame_codes) if codes.size else codes
    for k in range(header.frame_count):
        row = per_frame[k]
        luma = row[: header.luma_codes].reshape(header.measurement_shape)
        chroma = None
        if header.color_mode is ColorMode.YUV:
            plane = header.chroma_shape[0] * header.chroma_shape[1]
            u = row[header.luma_codes : header.luma_codes + plane].reshape(header.chroma_shape)
            v = row[header.luma_codes + plane :].reshape(header.chroma_shape)
            chroma = (u, v)
        frames.append(EncodedFrame(luma=luma, chroma=chroma))
    return EncodedStream(header=header, frames=frames)


def save_stream(path: Path, stream: EncodedStream) -> int:
    """写入 .bmvc 文件，返回字节数"""
    data = write_stream(stream.header, stream.frames)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    return len(data)


def load_stream(path: Path) -> EncodedStream:
    try:
        data = path.read_bytes()
    except OSError as e:
        raise ContainerError(f"无法读取码流文件: {e}", {"path": str(path)}) from e
    return read_stream(data)
