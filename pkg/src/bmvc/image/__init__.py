"""Image 模块

PGM/PPM/PBM 解析与写出，Pillow 支持的其他格式，以及图像文件收集。
"""

from .loader import IMAGE_SUFFIXES, gather_images, load_image, save_image
from .pnm import (
    PnmImage,
    encode_pbm,
    encode_pgm,
    encode_ppm,
    parse_pnm,
    read_pnm,
    write_pbm,
    write_pgm,
    write_ppm,
)

__all__ = [
    "load_image",
    "save_image",
    "gather_images",
    "IMAGE_SUFFIXES",
    "PnmImage",
    "parse_pnm",
    "read_pnm",
    "encode_pgm",
    "encode_ppm",
    "encode_pbm",
    "write_pgm",
    "write_ppm",
    "write_pbm",
]
