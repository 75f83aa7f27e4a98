"""BMVC 核心数据模型

定义前向模型涉及的全部领域类型：帧、掩码平面、块几何、测量值和量化规格。
所有类型构造后不可变，可以在线程间安全共享。
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import GeometryError, QuantizationError, SignalError

MIN_BITS = 8
MAX_BITS = 16


def _frozen_array(data: np.ndarray, dtype: type) -> np.ndarray:
    arr = np.array(data, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Frame:
    """二维灰度帧 X ∈ ℝ^{N_h×N_w}

    编解码器输入要求取值在 [0, 1]；解码中间结果可以超出该范围，
    因此范围检查由 `require_unit_range` 单独完成。

    Attributes:
        data: 行优先的二维 float64 数组
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.data)
        if arr.ndim != 2:
            raise GeometryError("帧必须是二维数组", {"ndim": arr.ndim})
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise GeometryError("帧尺寸不能为零", {"shape": arr.shape})
        if not np.all(np.isfinite(arr)):
            raise SignalError("帧包含非有限像素值")
        object.__setattr__(self, "data", _frozen_array(arr, np.float64))

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    def require_unit_range(self) -> "Frame":
        """检查像素值位于 [0, 1]，返回自身以便链式调用

        Raises:
            SignalError: 存在超出范围的像素
        """
        low = float(self.data.min())
        high = float(self.data.max())
        if low < 0.0 or high > 1.0:
            raise SignalError("编码输入必须位于 [0, 1]", {"min": low, "max": high})
        return self

    @classmethod
    def from_uint8(cls, pixels: np.ndarray) -> "Frame":
        """将 8 位图像按 n ↦ n/255 映射为帧"""
        return cls(np.asarray(pixels, dtype=np.float64) / 255.0)

    def to_uint8(self) -> np.ndarray:
        """截断到 [0, 1] 后量化为 8 位像素"""
        return np.floor(np.clip(self.data, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class MaskPlane:
    """全帧二值掩码 M ∈ {0,1}^{N_h×N_w}，即编解码双方共享的密钥

    Attributes:
        bits: 行优先的 uint8 二值数组
        seed: 生成该掩码的 64 位种子；None 表示不由种子生成的固定掩码
    """

    bits: np.ndarray
    seed: int | None

    def __post_init__(self) -> None:
        arr = np.asarray(self.bits)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise GeometryError("掩码必须是非空二维数组", {"shape": arr.shape})
        if not np.all((arr == 0) | (arr == 1)):
            raise SignalError("掩码只能包含 0 和 1")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise GeometryError("种子必须是 64 位无符号整数", {"seed": self.seed})
        object.__setattr__(self, "bits", _frozen_array(arr, np.uint8))

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    @property
    def fraction_of_ones(self) -> float:
        return float(self.bits.mean())


@dataclass(frozen=True)
class BlockGeometry:
    """块几何 (N_h, N_w, B_h, B_w)

    块按行优先顺序平铺整帧，块内像素同样按行优先排列。
    不能整除的块尺寸直接拒绝，因此压缩比 Cr 恒等于块数 N_b。

    Attributes:
        frame_height: 帧高度 N_h
        frame_width: 帧宽度 N_w
        block_height: 块高度 B_h
        block_width: 块宽度 B_w
    """

    frame_height: int
    frame_width: int
    block_height: int
    block_width: int

    def __post_init__(self) -> None:
        dims = {
            "frame_height": self.frame_height,
            "frame_width": self.frame_width,
            "block_height": self.block_height,
            "block_width": self.block_width,
        }
        if any(v < 1 for v in dims.values()):
            raise GeometryError("几何尺寸必须为正整数", dims)
        if self.frame_height % self.block_height:
            raise GeometryError("块高度必须整除帧高度", dims)
        if self.frame_width % self.block_width:
            raise GeometryError("块宽度必须整除帧宽度", dims)

    @property
    def blocks_down(self) -> int:
        return self.frame_height // self.block_height

    @property
    def blocks_across(self) -> int:
        return self.frame_width // self.block_width

    @property
    def num_blocks(self) -> int:
        """块数 N_b"""
        return self.blocks_down * self.blocks_across

    @property
    def compression_ratio(self) -> int:
        """压缩比 Cr = N_h·N_w / (B_h·B_w)，对不重叠块恒等于 N_b"""
        return self.num_blocks

    @property
    def frame_shape(self) -> tuple[int, int]:
        return (self.frame_height, self.frame_width)

    @property
    def block_shape(self) -> tuple[int, int]:
        return (self.block_height, self.block_width)

    @property
    def block_pixels(self) -> int:
        return self.block_height * self.block_width

    @property
    def frame_pixels(self) -> int:
        return self.frame_height * self.frame_width

    def check_frame_shape(self, shape: tuple[int, ...]) -> None:
        """检查数组形状与帧尺寸一致

        Raises:
            GeometryError: 形状不匹配
        """
        if tuple(shape) != self.frame_shape:
            raise GeometryError(
                "帧尺寸与几何不匹配",
                {"expected": self.frame_shape, "actual": tuple(shape)},
            )

    def check_block_shape(self, shape: tuple[int, ...]) -> None:
        if tuple(shape) != self.block_shape:
            raise GeometryError(
                "测量尺寸与块尺寸不匹配",
                {"expected": self.block_shape, "actual": tuple(shape)},
            )

    def to_blocks(self, frame: np.ndarray) -> np.ndarray:
        """把帧切分为 (N_b, B_h·B_w) 的块矩阵，第 b 行是块 b 的行优先向量"""
        self.check_frame_shape(frame.shape)
        tiles = frame.reshape(
            self.blocks_down, self.block_height, self.blocks_across, self.block_width
        )
        return tiles.transpose(0, 2, 1, 3).reshape(self.num_blocks, self.block_pixels)

    def from_blocks(self, blocks: np.ndarray) -> np.ndarray:
        """`to_blocks` 的逆变换"""
        if blocks.shape != (self.num_blocks, self.block_pixels):
            raise GeometryError(
                "块矩阵尺寸不匹配",
                {"expected": (self.num_blocks, self.block_pixels), "actual": blocks.shape},
            )
        tiles = blocks.reshape(
            self.blocks_down, self.blocks_across, self.block_height, self.block_width
        )
        return tiles.transpose(0, 2, 1, 3).reshape(self.frame_shape)

    def block_index_map(self) -> np.ndarray:
        """块索引映射

        Returns:
            形状为 (N_b, B_h·B_w) 的整数数组，元素 [b, i] 是块 b 中块内位置 i
            对应的帧像素行优先下标。该映射是块坐标与帧像素之间的双射。
        """
        flat = np.arange(self.frame_pixels, dtype=np.int64).reshape(self.frame_shape)
        return self.to_blocks(flat)

    def locate(self, row: int, col: int) -> tuple[int, int]:
        """帧像素 (row, col) → (块号 b, 块内位置 i)"""
        if not (0 <= row < self.frame_height and 0 <= col < self.frame_width):
            raise GeometryError("像素坐标越界", {"row": row, "col": col})
        block = (row // self.block_height) * self.blocks_across + col // self.block_width
        inner = (row % self.block_height) * self.block_width + col % self.block_width
        return block, inner

    def pixel_of(self, block: int, inner: int) -> tuple[int, int]:
        """(块号 b, 块内位置 i) → 帧像素 (row, col)"""
        if not (0 <= block < self.num_blocks and 0 <= inner < self.block_pixels):
            raise GeometryError("块坐标越界", {"block": block, "inner": inner})
        block_row, block_col = divmod(block, self.blocks_across)
        inner_row, inner_col = divmod(inner, self.block_width)
        return (
            block_row * self.block_height + inner_row,
            block_col * self.block_width + inner_col,
        )


@dataclass(frozen=True, eq=False)
class Measurement:
    """压缩测量值 Y₀ ∈ ℝ^{B_h×B_w}

    Attributes:
        values: 行优先的二维 float64 数组
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values)
        if arr.ndim != 2:
            raise GeometryError("测量值必须是二维数组", {"ndim": arr.ndim})
        if not np.all(np.isfinite(arr)):
            raise SignalError("测量值包含非有限数")
        object.__setattr__(self, "values", _frozen_array(arr, np.float64))

    @property
    def block_height(self) -> int:
        return int(self.values.shape[0])

    @property
    def block_width(self) -> int:
        return int(self.values.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.block_height, self.block_width)


@dataclass(frozen=True)
class QuantSpec:
    """均匀量化规格

    Attributes:
        bits: 位深，取值 [8, 16]
        y_max: 量化尺度，BMVC 中取 max_i r_i（由掩码和几何推导，无需传输）
    """

    bits: int
    y_max: float

    def __post_init__(self) -> None:
        if not MIN_BITS <= self.bits <= MAX_BITS:
            raise QuantizationError(
                f"位深必须位于 [{MIN_BITS}, {MAX_BITS}]", {"bits": self.bits}
            )
        if not (math.isfinite(self.y_max) and self.y_max > 0):
            raise QuantizationError("量化尺度必须为正数", {"y_max": self.y_max})

    @property
    def levels(self) -> int:
        """最大码值 2^bits − 1"""
        return (1 << self.bits) - 1

    @property
    def step(self) -> float:
        """量化步长 Δ = y_max / (2^bits − 1)"""
        return self.y_max / self.levels

    @property
    def max_error(self) -> float:
        """单像素往返误差上界 y_max / (2^(bits+1) − 2)"""
        return self.y_max / (2 * self.levels)


@dataclass(frozen=True)
class HdPreset:
    """1080×1920 高清帧的块尺寸预设"""

    block_height: int
    block_width: int
    geometry: BlockGeometry = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "geometry", BlockGeometry(1080, 1920, self.block_height, self.block_width)
        )

    @property
    def compression_ratio(self) -> int:
        return self.geometry.compression_ratio


HD_BLOCK_PRESETS: tuple[HdPreset, ...] = tuple(
    HdPreset(bh, bw)
    for bh, bw in [
        (108, 128),
        (108, 160),
        (108, 192),
        (108, 240),
        (120, 240),
        (216, 160),
        (216, 192),
        (216, 240),
        (270, 240),
        (270, 320),
    ]
)


def geometry_for_ratio(frame_height: int, frame_width: int, ratio: int) -> BlockGeometry:
    """为给定帧尺寸寻找压缩比恰为 ratio 的合法块几何

    在所有满足 a·b = ratio、a | N_h、b | N_w 的分解中，选择块形状与帧形状
    最接近的一个（纵横比偏差最小）。

    Args:
        frame_height: 帧高度
        frame_width: 帧宽度
        ratio: 目标压缩比（块数）

    Returns:
        BlockGeometry 实例

    Raises:
        GeometryError: 不存在合法分解
    """
    if ratio < 1:
        raise GeometryError("压缩比必须为正整数", {"ratio": ratio})
    best: tuple[float, BlockGeometry] | None = None
    for down in range(1, ratio + 1):
        if ratio % down:
            continue
        across = ratio // down
        if frame_height % down or frame_width % across:
            continue
        geom = BlockGeometry(
            frame_height, frame_width, frame_height // down, frame_width // across
        )
        skew = abs(math.log(down / across))
        if best is None or skew < best[0]:
            best = (skew, geom)
    if best is None:
        raise GeometryError(
            "找不到满足压缩比的整除块尺寸",
            {"frame": (frame_height, frame_width), "ratio": ratio},
        )
    return best[1]
