"""BMVC 线性前向模型

Φ 是 N_b 个对角矩阵的横向拼接，因此 R = ΦΦᵀ = diag(r_i) 是对角阵，
GAP 投影 x = v + Φᵀ R⁺ (y − Φv) 只需逐像素运算，不需要构造任何稠密矩阵。
"""

from dataclasses import dataclass, field

import numpy as np

from ..core.exceptions import DegenerateMaskError, GeometryError
from ..core.model import BlockGeometry, Frame, Measurement
from ..mask.generator import MaskLut


@dataclass(frozen=True, eq=False)
class BmvcOperator:
    """BMVC 感知算子

    Attributes:
        geometry: 块几何
        lut: 掩码查找表
        r: r_i 向量，长度 B_h·B_w
    """

    geometry: BlockGeometry
    lut: MaskLut
    r: np.ndarray = field(init=False)
    _weights: np.ndarray = field(init=False, repr=False)
    _r_pinv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.lut.geometry != self.geometry:
            raise GeometryError(
                "查找表与几何不一致",
                {"lut": self.lut.geometry.block_shape, "geometry": self.geometry.block_shape},
            )
        r = self.lut.counts.astype(np.float64)
        # r_i = 0 的位置取伪逆 0，即不做修正
        r_pinv = np.divide(1.0, r, out=np.zeros_like(r), where=r > 0)
        weights = self.lut.selection.astype(np.float64)
        for arr in (r, r_pinv, weights):
            arr.flags.writeable = False
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "_r_pinv", r_pinv)
        object.__setattr__(self, "_weights", weights)

    @classmethod
    def from_lut(cls, lut: MaskLut) -> "BmvcOperator":
        return cls(geometry=lut.geometry, lut=lut)

    @property
    def frame_shape(self) -> tuple[int, int]:
        return self.geometry.frame_shape

    @property
    def measurement_shape(self) -> tuple[int, int]:
        return self.geometry.block_shape

    @property
    def degenerate(self) -> bool:
        """所有 r_i 均为 0"""
        return not bool(np.any(self.r > 0))

    # ------------------------------------------------------------------
    # 数组接口，供解码循环使用

    def forward(self, x: np.ndarray) -> np.ndarray:
        """y = Φx"""
        blocks = self.geometry.to_blocks(x)
        return (blocks * self._weights).sum(axis=0).reshape(self.measurement_shape)

    def adjoint(self, y: np.ndarray) -> np.ndarray:
        """x = Φᵀy"""
        self.geometry.check_block_shape(y.shape)
        return self.geometry.from_blocks(self._weights * y.reshape(1, -1))

    def initial(self, y: np.ndarray) -> np.ndarray:
        """掩码归一化反投影 Φᵀ R⁺ y"""
        self.geometry.check_block_shape(y.shape)
        return self.adjoint(y * self._r_pinv.reshape(self.measurement_shape))

    def project(self, v: np.ndarray, y: np.ndarray) -> np.ndarray:
        """GAP 投影 x = v + Φᵀ R⁺ (y − Φv)"""
        return v + self.initial(y - self.forward(v))

    def residual(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """y − Φx"""
        return y - self.forward(x)

    def check(self, y: np.ndarray) -> None:
        """解码前检查测量尺寸和掩码可解性

        Raises:
            GeometryError: 测量尺寸与块尺寸不符
            DegenerateMaskError: 所有 r_i 均为 0
        """
        self.geometry.check_block_shape(np.shape(y))
        if self.degenerate:
            raise DegenerateMaskError(
                "掩码全零，测量不包含任何信息", {"blocks": self.geometry.num_blocks}
            )

    # ------------------------------------------------------------------
    # 领域类型接口

    def apply(self, x: Frame) -> Measurement:
        self.geometry.check_frame_shape(x.shape)
        return Measurement(self.forward(x.data))

    def apply_adjoint(self, y: Measurement) -> Frame:
        return Frame(self.adjoint(y.values))

    def gap_project(self, v: Frame, y: Measurement) -> Frame:
        self.geometry.check_frame_shape(v.shape)
        return Frame(self.project(v.data, y.values))


def apply(op: BmvcOperator, x: Frame) -> Measurement:
    return op.apply(x)


def apply_adjoint(op: BmvcOperator, y: Measurement) -> Frame:
    return op.apply_adjoint(y)


def gap_project(op: BmvcOperator, v: Frame, y: Measurement) -> Frame:
    """GAP 投影的函数式入口

    Examples:
        >>> x = gap_project(op, v, y)
        >>> np.allclose(op.apply(x).values, y.values)
        True
    """
    return op.gap_project(v, y)
