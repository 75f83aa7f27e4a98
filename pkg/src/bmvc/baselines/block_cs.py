"""分块压缩感知基线

每个 24×24 块共用同一个 M×576 的二值感知矩阵 A：y_blk = A·x_blk。
Aᵀ 的经济 QR 分解 Aᵀ = QR 给出 AAᵀ = RᵀR，GAP 投影的最小范数修正
Aᵀ(AAᵀ)⁻¹ r 化为 Q·R⁻ᵀ r，只需一次三角回代。
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import qr, solve_triangular

from ..core.config import DecodeConfig
from ..core.exceptions import DegenerateMaskError, GeometryError
from ..core.model import BlockGeometry, Frame, Measurement, QuantSpec
from ..decoder.pnp import DecodeResult, decode
from ..mask.prng import MASK64, Xoshiro256StarStar

logger = logging.getLogger(__name__)

BLOCK_SIZE = 24
BLOCK_PIXELS = BLOCK_SIZE * BLOCK_SIZE

# |R_jj| 低于该比例视为 AAᵀ 奇异
SINGULAR_TOLERANCE = 1e-10
MAX_RESAMPLES = 64


def measurements_for_ratio(ratio: float) -> int:
    """M = ⌊576/Cr + ½⌋，限制在 [1, 576]"""
    if not ratio >= 1.0:
        raise GeometryError("压缩比必须不小于 1", {"ratio": ratio})
    return min(BLOCK_PIXELS, max(1, int(np.floor(BLOCK_PIXELS / ratio + 0.5))))


def sensing_matrix(measurements: int, seed: int) -> np.ndarray:
    """xoshiro256** 输出最高位按行优先填充的 M×576 二值矩阵"""
    rng = Xoshiro256StarStar.from_seed(seed)
    return rng.top_bits(measurements * BLOCK_PIXELS).reshape(measurements, BLOCK_PIXELS)


def _factorize(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    q, r = qr(matrix.T.astype(np.float64), mode="economic")
    diag = np.abs(np.diag(r))
    if diag.max() == 0.0 or diag.min() < SINGULAR_TOLERANCE * np.abs(r).max():
        return None
    return q, r


@dataclass(frozen=True, eq=False)
class BlockCsOperator:
    """分块 CS 感知算子

    Attributes:
        geometry: 24×24 分块几何
        matrix: 二值感知矩阵 A，形状 (M, 576)
        seed: 实际使用的种子（重采样后）
        requested_seed: 调用方给出的种子
    """

    geometry: BlockGeometry
    matrix: np.ndarray
    seed: int
    requested_seed: int
    _q: np.ndarray = field(repr=False)
    _r: np.ndarray = field(repr=False)
    _a: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        a = self.matrix.astype(np.float64)
        a.flags.writeable = False
        object.__setattr__(self, "_a", a)

    @classmethod
    def create(
        cls, frame_height: int, frame_width: int, measurements: int, seed: int
    ) -> "BlockCsOperator":
        """生成感知矩阵并预分解

        AAᵀ 奇异时依次尝试 seed+1, seed+2, ...

        Raises:
            GeometryError: 帧尺寸不能被 24 整除或 M 越界
            DegenerateMaskError: 连续多次重采样仍然奇异
        """
        if frame_height % BLOCK_SIZE or frame_width % BLOCK_SIZE:
            raise GeometryError(
                f"分块 CS 要求帧尺寸是 {BLOCK_SIZE} 的倍数",
                {"frame_height": frame_height, "frame_width": frame_width},
            )
        if not 1 <= measurements <= BLOCK_PIXELS:
            raise GeometryError(
                f"每块测量数必须位于 [1, {BLOCK_PIXELS}]", {"measurements": measurements}
            )
        geom = BlockGeometry(frame_height, frame_width, BLOCK_SIZE, BLOCK_SIZE)

        for attempt in range(MAX_RESAMPLES):
            current = (seed + attempt) & MASK64
            matrix = sensing_matrix(measurements, current)
            factors = _factorize(matrix)
            if factors is not None:
                break
            logger.warning("感知矩阵 AAᵀ 奇异，重采样种子 %d → %d", current, (current + 1) & MASK64)
        else:
            raise DegenerateMaskError(
                "无法生成可逆的感知矩阵", {"seed": seed, "attempts": MAX_RESAMPLES}
            )

        q, r = factors
        for arr in (matrix, q, r):
            arr.flags.writeable = False
        return cls(
            geometry=geom, matrix=matrix, seed=current, requested_seed=seed, _q=q, _r=r
        )

    @classmethod
    def for_ratio(
        cls, frame_height: int, frame_width: int, ratio: float, seed: int
    ) -> "BlockCsOperator":
        return cls.create(frame_height, frame_width, measurements_for_ratio(ratio), seed)

    @property
    def measurements(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def frame_shape(self) -> tuple[int, int]:
        return self.geometry.frame_shape

    @property
    def measurement_shape(self) -> tuple[int, int]:
        """(块数, M)"""
        return (self.geometry.num_blocks, self.measurements)

    @property
    def compression_ratio(self) -> float:
        return BLOCK_PIXELS / self.measurements

    @property
    def y_max(self) -> float:
        """A 的最大行和，也是测量值的精确上界"""
        return float(self.matrix.sum(axis=1).max())

    @property
    def additions(self) -> int:
        """编码一帧的加法次数 nnz(A)·块数"""
        return int(np.count_nonzero(self.matrix)) * self.geometry.num_blocks

    def quant_spec(self, bits: int) -> QuantSpec:
        if self.y_max == 0.0:
            raise DegenerateMaskError("感知矩阵全零，无法确定量化尺度", {"seed": self.seed})
        return QuantSpec(bits=bits, y_max=self.y_max)

    def forward(self, x: np.ndarray) -> np.ndarray:
        return self.geometry.to_blocks(x) @ self._a.T

    def adjoint(self, y: np.ndarray) -> np.ndarray:
        self.check(y)
        return self.geometry.from_blocks(y @ self._a)

    def _min_norm(self, z: np.ndarray) -> np.ndarray:
        """逐块 Aᵀ(AAᵀ)⁻¹ z = Q·R⁻ᵀ z，z 形状 (块数, M)"""
        w = solve_triangular(self._r, z.T, trans="T", lower=False)
        return self.geometry.from_blocks((self._q @ w).T)

    def check(self, y: np.ndarray) -> None:
        if np.shape(y) != self.measurement_shape:
            raise GeometryError(
                "测量尺寸与分块 CS 算子不匹配",
                {"expected": self.measurement_shape, "actual": np.shape(y)},
            )

    def initial(self, y: np.ndarray) -> np.ndarray:
        return self._min_norm(y)

    def project(self, v: np.ndarray, y: np.ndarray) -> np.ndarray:
        return v + self._min_norm(y - self.forward(v))

    def residual(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return y - self.forward(x)


def block_cs_encode(frame: Frame, op: BlockCsOperator) -> Measurement:
    """逐块计算 y_blk = A·x_blk

    Returns:
        形状 (块数, M) 的测量
    """
    if frame.shape != op.frame_shape:
        raise GeometryError(
            "帧尺寸与分块 CS 算子不匹配", {"expected": op.frame_shape, "actual": frame.shape}
        )
    frame.require_unit_range()
    return Measurement(op.forward(frame.data))


def block_cs_decode(
    measurements: Measurement | np.ndarray,
    op: BlockCsOperator,
    cfg: DecodeConfig | None = None,
    *,
    reference: Frame | None = None,
) -> DecodeResult:
    """用 PnP-GAP 解码，去噪器作用在拼接后的整帧上"""
    return decode(measurements, op, cfg, reference=reference)
