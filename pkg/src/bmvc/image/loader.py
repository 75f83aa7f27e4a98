"""按扩展名读写图像

PNM 家族由内置解析器处理，PNG 等其他格式交给 Pillow。
读出的像素统一映射到 [0, 1] 浮点。
"""

import logging
import typing as t
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..core.exceptions import ImageFormatError
from .pnm import read_pnm, write_pbm, write_pgm, write_ppm

logger = logging.getLogger(__name__)

PNM_SUFFIXES = {".pgm", ".ppm", ".pnm", ".pbm"}
PILLOW_SUFFIXES = {".png", ".bmp", ".tif", ".tiff"}
IMAGE_SUFFIXES = PNM_SUFFIXES | PILLOW_SUFFIXES


def load_image(path: Path) -> np.ndarray:
    """读取图像

    Returns:
        灰度图 (H, W) 或彩色图 (H, W, 3)，取值 [0, 1]

    Raises:
        ImageFormatError: 文件不存在、扩展名不受支持或内容无法解析
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix in PNM_SUFFIXES:
        return read_pnm(path).to_unit()
    if suffix not in PILLOW_SUFFIXES:
        raise ImageFormatError("不支持的图像格式", {"path": str(path)})

    try:
        with Image.open(path) as img:
            if img.mode.startswith("I"):
                gray = np.asarray(img, dtype=np.float64) / 65535.0
                return np.clip(gray, 0.0, 1.0)
            if img.mode in ("1", "L", "LA"):
                return np.asarray(img.convert("L"), dtype=np.float64) / 255.0
            return np.asarray(img.convert("RGB"), dtype=np.float64) / 255.0
    except (OSError, UnidentifiedImageError) as e:
        raise ImageFormatError(f"无法读取图像: {e}", {"path": str(path)}) from e


def save_image(path: Path, pixels: np.ndarray) -> Path:
    """按扩展名写出 [0, 1] 图像，超出范围的值被截断"""
    path = Path(path)
    suffix = path.suffix.lower()
    arr = np.asarray(pixels, dtype=np.float64)
    if suffix in (".pgm", ".pnm") and arr.ndim == 2:
        return write_pgm(path, arr)
    if suffix in (".ppm", ".pnm") and arr.ndim == 3:
        return write_ppm(path, arr)
    if suffix == ".pbm":
        return write_pbm(path, arr > 0.5)
    if suffix in PILLOW_SUFFIXES:
        path.parent.mkdir(parents=True, exist_ok=True)
        data = np.floor(np.clip(arr, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
        Image.fromarray(data).save(path)
        return path
    raise ImageFormatError(
        "扩展名与图像通道数不匹配", {"path": str(path), "shape": arr.shape}
    )


def gather_images(
    paths: t.Iterable[Path | str], *, deep: bool = False
) -> list[Path]:
    """收集图像文件

    目录按扩展名筛选（deep=True 时递归），文件直接保留。结果按路径排序。
    """
    found: list[Path] = []
    for entry in (Path(p) for p in paths):
        if entry.is_dir():
            pattern = "**/*" if deep else "*"
            found.extend(
                p for p in entry.glob(pattern) if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
            )
        elif entry.is_file():
            found.append(entry)
        else:
            logger.warning("路径不存在，已跳过: %s", entry)
    return sorted(set(found))
