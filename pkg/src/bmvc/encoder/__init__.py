"""Encoder 模块

乘法无关的 BMVC 编码器和均匀量化器。
"""

from .encoder import BmvcEncoder, OpCounters, OpCounts, encode
from .quantizer import dequantize, quantize

__all__ = [
    "BmvcEncoder",
    "OpCounters",
    "OpCounts",
    "encode",
    "quantize",
    "dequantize",
]
