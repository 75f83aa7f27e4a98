"""掩码生成与查找表

掩码的每一位是 xoshiro256** 连续输出的最高位，按行优先顺序排列。
查找表 (LUT) 为每个块内位置列出掩码为 1 的块号，编码器据此只做加法。
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..core.exceptions import DegenerateMaskError, GeometryError
from ..core.model import BlockGeometry, MaskPlane, QuantSpec
from .prng import Xoshiro256StarStar

logger = logging.getLogger(__name__)


def generate_mask(seed: int, height: int, width: int) -> MaskPlane:
    """由种子生成全帧二值掩码

    Args:
        seed: 64 位无符号种子
        height: 掩码高度
        width: 掩码宽度

    Returns:
        MaskPlane 实例，相同种子和尺寸总是得到逐位一致的结果

    Raises:
        GeometryError: 尺寸为零或种子越界
    """
    if height < 1 or width < 1:
        raise GeometryError("掩码尺寸必须为正整数", {"height": height, "width": width})
    if not 0 <= seed < 2**64:
        raise GeometryError("种子必须是 64 位无符号整数", {"seed": seed})

    rng = Xoshiro256StarStar.from_seed(seed)
    bits = rng.top_bits(height * width).reshape(height, width)
    mask = MaskPlane(bits=bits, seed=seed)
    logger.debug(
        "生成掩码: seed=%d, size=%dx%d, ones=%.4f", seed, height, width, mask.fraction_of_ones
    )
    return mask


@dataclass(frozen=True, eq=False)
class MaskLut:
    """掩码查找表

    以 CSR 形式保存：块内位置 i 的块号列表为
    ``blocks[offsets[i]:offsets[i + 1]]``，列表升序排列。

    Attributes:
        geometry: 块几何
        offsets: 长度 B_h·B_w + 1 的偏移数组
        blocks: 所有列表依次拼接的块号
        counts: r_i = 列表长度
        selection: (N_b, B_h·B_w) 布尔表，selection[b, i] = m_{i,b}
    """

    geometry: BlockGeometry
    offsets: np.ndarray
    blocks: np.ndarray
    counts: np.ndarray
    selection: np.ndarray
    positions: np.ndarray = field(repr=False)

    def entries(self, inner: int) -> list[int]:
        """块内位置 inner 对应的块号列表"""
        start, stop = int(self.offsets[inner]), int(self.offsets[inner + 1])
        return [int(b) for b in self.blocks[start:stop]]

    @property
    def r(self) -> np.ndarray:
        """r_i 向量，形状 (B_h·B_w,)"""
        return self.counts

    @property
    def total_entries(self) -> int:
        """Σ r_i，即一次编码所需的加法次数"""
        return int(self.blocks.size)

    @property
    def dead_pixels(self) -> int:
        """r_i = 0 的块内位置数，这些位置不携带任何测量信息"""
        return int(np.count_nonzero(self.counts == 0))

    @property
    def y_max(self) -> int:
        """max_i r_i，也是测量值的上界"""
        return int(self.counts.max())

    def quant_spec(self, bits: int) -> QuantSpec:
        """由掩码推导的量化规格 (bits, max r_i)

        Raises:
            DegenerateMaskError: 所有 r_i 均为 0
        """
        if self.y_max == 0:
            raise DegenerateMaskError("掩码全零，无法确定量化尺度")
        return QuantSpec(bits=bits, y_max=float(self.y_max))


def build_lut(mask: MaskPlane, geom: BlockGeometry) -> MaskLut:
    """按块索引映射把掩码整理为查找表

    Args:
        mask: 全帧掩码
        geom: 块几何

    Returns:
        MaskLut 实例

    Raises:
        GeometryError: 掩码尺寸与帧尺寸不一致
    """
    if (mask.height, mask.width) != geom.frame_shape:
        raise GeometryError(
            "掩码尺寸与帧尺寸不匹配",
            {"mask": (mask.height, mask.width), "frame": geom.frame_shape},
        )

    selection = geom.to_blocks(mask.bits).astype(bool)
    # nonzero 先按块内位置、再按块号升序返回
    positions, blocks = (idx.astype(np.int64) for idx in np.nonzero(selection.T))
    counts = selection.sum(axis=0).astype(np.int64)
    offsets = np.zeros(geom.block_pixels + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])

    for arr in (selection, positions, blocks, counts, offsets):
        arr.flags.writeable = False

    lut = MaskLut(
        geometry=geom,
        offsets=offsets,
        blocks=blocks,
        counts=counts,
        selection=selection,
        positions=positions,
    )
    if lut.dead_pixels:
        logger.warning(
            "掩码存在 %d 个 r_i = 0 的位置，这些位置不携带测量信息 (seed=%s)",
            lut.dead_pixels,
            mask.seed,
        )
    return lut


def export_mask(mask: MaskPlane, path: Path) -> Path:
    """把掩码导出为 PBM (P4) 以便检查"""
    from ..image.pnm import write_pbm

    write_pbm(path, mask.bits)
    return path


def key_mask(seed: int, geom: BlockGeometry) -> MaskPlane:
    """编解码双方共用的密钥掩码

    只有一个块时没有需要区分的块，调制退化为全 1 掩码，Φ 即单位阵。
    该掩码不由种子生成，seed 记为 None；种子仍写入码流头。
    """
    if geom.num_blocks == 1:
        return MaskPlane(bits=np.ones(geom.frame_shape, dtype=np.uint8), seed=None)
    return generate_mask(seed, *geom.frame_shape)
