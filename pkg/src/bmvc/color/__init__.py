"""Color 模块

RGB/YUV 转换与色度下采样、上采样。
"""

from .yuv import (
    DEFAULT_CHROMA_FACTOR,
    RGB_TO_YUV,
    YUV_TO_RGB,
    chroma_down,
    chroma_up,
    rgb_to_yuv,
    yuv_to_rgb,
)

__all__ = [
    "rgb_to_yuv",
    "yuv_to_rgb",
    "chroma_down",
    "chroma_up",
    "RGB_TO_YUV",
    "YUV_TO_RGB",
    "DEFAULT_CHROMA_FACTOR",
]
