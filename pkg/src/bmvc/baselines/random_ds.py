"""随机降采样基线

编码端只保留 1/Cr 的原始像素，解码是图像修复问题：
投影步骤把采样位置重置为测量值（SSᵀ = I 的 GAP 特例）。
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..core.config import DecodeConfig
from ..core.exceptions import GeometryError
from ..core.model import Frame
from ..decoder.pnp import DecodeResult, decode
from ..mask.prng import Xoshiro256StarStar

logger = logging.getLogger(__name__)


def samples_for_ratio(frame_pixels: int, ratio: float) -> int:
    """k = ⌊N/Cr + ½⌋，至少为 1"""
    if not ratio >= 1.0:
        raise GeometryError("压缩比必须不小于 1", {"ratio": ratio})
    return max(1, int(np.floor(frame_pixels / ratio + 0.5)))


def sample_indices(frame_pixels: int, samples: int, seed: int) -> np.ndarray:
    """部分 Fisher–Yates 洗牌，返回升序排列的 k 个像素下标

    for i in 0..k−1: j = i + (next() mod (N − i))，交换 perm[i] 与 perm[j]
    """
    if not 1 <= samples <= frame_pixels:
        raise GeometryError(
            "采样数必须位于 [1, N]", {"samples": samples, "pixels": frame_pixels}
        )
    rng = Xoshiro256StarStar.from_seed(seed)
    # 稀疏置换：只记录被交换过的位置，内存随 k 而非 N 增长
    perm: dict[int, int] = {}
    for i in range(samples):
        j = i + rng.next_below(frame_pixels - i)
        perm[i], perm[j] = perm.get(j, j), perm.get(i, i)
    picked = np.fromiter((perm.get(i, i) for i in range(samples)), dtype=np.int64, count=samples)
    return np.sort(picked)


@dataclass(frozen=True, eq=False)
class RandomDsPattern:
    """随机采样模式

    Attributes:
        frame_height: 帧高度
        frame_width: 帧宽度
        indices: 升序、互不重复的行优先像素下标 S
        seed: 生成 S 的种子
    """

    frame_height: int
    frame_width: int
    indices: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        idx = np.asarray(self.indices, dtype=np.int64)
        n = self.frame_height * self.frame_width
        if idx.ndim != 1 or idx.size == 0:
            raise GeometryError("采样下标必须是非空一维数组")
        if idx.min() < 0 or idx.max() >= n:
            raise GeometryError("采样下标越界", {"min": int(idx.min()), "max": int(idx.max())})
        if np.any(np.diff(idx) <= 0):
            raise GeometryError("采样下标必须严格升序")
        idx = idx.copy()
        idx.flags.writeable = False
        object.__setattr__(self, "indices", idx)

    @classmethod
    def create(cls, height: int, width: int, samples: int, seed: int) -> "RandomDsPattern":
        """按采样数创建模式"""
        indices = sample_indices(height * width, samples, seed)
        logger.debug(
            "生成随机采样模式: size=%dx%d, samples=%d, seed=%d", height, width, samples, seed
        )
        return cls(height, width, indices, seed)

    @classmethod
    def for_ratio(cls, height: int, width: int, ratio: float, seed: int) -> "RandomDsPattern":
        return cls.create(height, width, samples_for_ratio(height * width, ratio), seed)

    @property
    def frame_shape(self) -> tuple[int, int]:
        return (self.frame_height, self.frame_width)

    @property
    def samples(self) -> int:
        return int(self.indices.size)

    @property
    def compression_ratio(self) -> float:
        return self.frame_height * self.frame_width / self.samples


class RandomDsProjector:
    """随机降采样的 GAP 投影：采样位置取测量值，其余位置保持不变"""

    def __init__(self, pattern: RandomDsPattern) -> None:
        self.pattern = pattern

    @property
    def frame_shape(self) -> tuple[int, int]:
        return self.pattern.frame_shape

    def check(self, y: np.ndarray) -> None:
        if np.shape(y) != (self.pattern.samples,):
            raise GeometryError(
                "采样值数量与模式不匹配",
                {"expected": self.pattern.samples, "actual": np.shape(y)},
            )

    def initial(self, y: np.ndarray) -> np.ndarray:
        """未采样像素取样本均值"""
        x = np.full(self.frame_shape, float(np.mean(y)))
        x.flat[self.pattern.indices] = y
        return x

    def project(self, v: np.ndarray, y: np.ndarray) -> np.ndarray:
        x = np.array(v, dtype=np.float64, copy=True)
        x.flat[self.pattern.indices] = y
        return x

    def residual(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return y - np.asarray(x).ravel()[self.pattern.indices]


def random_ds_encode(frame: Frame, pattern: RandomDsPattern) -> np.ndarray:
    """取出 S 上的像素值，按下标顺序排列

    Raises:
        GeometryError: 帧尺寸与模式不匹配
    """
    if frame.shape != pattern.frame_shape:
        raise GeometryError(
            "帧尺寸与采样模式不匹配",
            {"expected": pattern.frame_shape, "actual": frame.shape},
        )
    frame.require_unit_range()
    return frame.data.ravel()[pattern.indices].copy()


def random_ds_decode(
    samples: np.ndarray,
    pattern: RandomDsPattern,
    cfg: DecodeConfig | None = None,
    *,
    reference: Frame | None = None,
) -> DecodeResult:
    """用 PnP-GAP 修复未采样像素"""
    return decode(
        np.asarray(samples, dtype=np.float64).ravel(),
        RandomDsProjector(pattern),
        cfg,
        reference=reference,
    )
