"""Decoder 模块

通用 PnP-GAP 迭代解码器。
"""

from .pnp import RESIDUAL_GROWTH_LIMIT, DecodeResult, Projector, decode

__all__ = ["decode", "DecodeResult", "Projector", "RESIDUAL_GROWTH_LIMIT"]
