"""BMVC 编码器

分块、按查找表调制求和、量化。热点路径只做加法：
测量值 y_i = Σ_{b ∈ LUT[i]} X_b[i]，按 LUT 列表顺序累加，结果可逐位复现。
"""

import threading
from dataclasses import dataclass

import numpy as np

from ..core.exceptions import GeometryError
from ..core.model import BlockGeometry, Frame, Measurement
from ..mask.generator import MaskLut


@dataclass(frozen=True)
class OpCounts:
    """一次编码的运算计数"""

    additions: int = 0
    multiplications: int = 0

    def __add__(self, other: "OpCounts") -> "OpCounts":
        return OpCounts(
            self.additions + other.additions,
            self.multiplications + other.multiplications,
        )


class OpCounters:
    """线程安全的运算计数器

    记录最近一次编码和累计的加法、乘法次数。
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._last = OpCounts()
        self._total = OpCounts()
        self._calls = 0

    def record(self, counts: OpCounts) -> None:
        with self._lock:
            self._last = counts
            self._total = self._total + counts
            self._calls += 1

    def reset(self) -> None:
        with self._lock:
            self._last = OpCounts()
            self._total = OpCounts()
            self._calls = 0

    @property
    def last(self) -> OpCounts:
        with self._lock:
            return self._last

    @property
    def total(self) -> OpCounts:
        with self._lock:
            return self._total

    @property
    def calls(self) -> int:
        with self._lock:
            return self._calls


class BmvcEncoder:
    """基于查找表的乘法无关编码器

    Attributes:
        lut: 掩码查找表
        geometry: 块几何
        counters: 运算计数器（instrument=False 时不记录）

    Examples:
        >>> encoder = BmvcEncoder(lut)
        >>> y = encoder.encode(frame)
        >>> encoder.op_counters()
        (1036800, 0)
    """

    def __init__(self, lut: MaskLut, *, instrument: bool = True) -> None:
        self.lut = lut
        self.geometry = lut.geometry
        self.instrument = instrument
        self.counters = OpCounters()

    def encode_array(self, frame: np.ndarray) -> np.ndarray:
        """对二维数组编码，返回 (B_h, B_w) 测量数组"""
        geom = self.geometry
        geom.check_frame_shape(frame.shape)
        blocks = geom.to_blocks(np.asarray(frame, dtype=np.float64))

        # 按 LUT 顺序取出被掩码选中的像素，再按块内位置逐个累加
        picked = blocks[self.lut.blocks, self.lut.positions]
        y = np.bincount(self.lut.positions, weights=picked, minlength=geom.block_pixels)

        if self.instrument:
            self.counters.record(OpCounts(additions=int(picked.size), multiplications=0))
        return y.reshape(geom.block_shape)

    def encode(self, frame: Frame) -> Measurement:
        """编码一帧

        Args:
            frame: 取值在 [0, 1] 的输入帧

        Returns:
            无噪声压缩测量 Y₀

        Raises:
            GeometryError: 帧尺寸与几何不匹配
            SignalError: 像素值超出 [0, 1]
        """
        if frame.shape != self.geometry.frame_shape:
            raise GeometryError(
                "帧尺寸与几何不匹配",
                {"expected": self.geometry.frame_shape, "actual": frame.shape},
            )
        frame.require_unit_range()
        return Measurement(self.encode_array(frame.data))

    def op_counters(self) -> tuple[int, int]:
        """最近一次编码的 (加法次数, 乘法次数)"""
        last = self.counters.last
        return (last.additions, last.multiplications)


def encode(frame: Frame, lut: MaskLut, geom: BlockGeometry) -> Measurement:
    """无状态的编码入口

    Raises:
        GeometryError: 查找表与几何不一致或帧尺寸不匹配
        SignalError: 像素值超出 [0, 1]
    """
    if lut.geometry != geom:
        raise GeometryError(
            "查找表与几何不一致",
            {"lut": lut.geometry.block_shape, "geometry": geom.block_shape},
        )
    return BmvcEncoder(lut, instrument=False).encode(frame)


