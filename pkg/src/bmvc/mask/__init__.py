"""Mask 模块

提供共享密钥（全帧二值掩码）的确定性生成和查找表构建。
"""

from .generator import MaskLut, build_lut, export_mask, generate_mask, key_mask
from .prng import SplitMix64, Xoshiro256StarStar

__all__ = [
    "generate_mask",
    "key_mask",
    "build_lut",
    "export_mask",
    "MaskLut",
    "SplitMix64",
    "Xoshiro256StarStar",
]
