"""Baselines 模块

对比实验使用的两个压缩感知基线：随机降采样和分块压缩感知，
二者都用同一个 PnP-GAP 解码器重建。
"""

from .block_cs import (
    BLOCK_PIXELS,
    BLOCK_SIZE,
    BlockCsOperator,
    block_cs_decode,
    block_cs_encode,
    measurements_for_ratio,
    sensing_matrix,
)
from .random_ds import (
    RandomDsPattern,
    RandomDsProjector,
    random_ds_decode,
    random_ds_encode,
    sample_indices,
    samples_for_ratio,
)

__all__ = [
    # 随机降采样
    "RandomDsPattern",
    "RandomDsProjector",
    "random_ds_encode",
    "random_ds_decode",
    "sample_indices",
    "samples_for_ratio",
    # 分块 CS
    "BlockCsOperator",
    "block_cs_encode",
    "block_cs_decode",
    "measurements_for_ratio",
    "sensing_matrix",
    "BLOCK_SIZE",
    "BLOCK_PIXELS",
]
