"""RGB ↔ YUV 与色度重采样

BT.601 全范围矩阵，U/V 以 0.5 为偏置使三平面都落在 [0, 1]。
BMVC 只压缩 Y 平面，U/V 做盒式下采样后直接量化存储，解码时双三次上采样。
"""

import numpy as np
from scipy.ndimage import zoom

from ..core.exceptions import GeometryError, SignalError

RGB_TO_YUV = np.array(
    [
        [0.299, 0.587, 0.114],
        [-0.168736, -0.331264, 0.5],
        [0.5, -0.418688, -0.081312],
    ]
)
YUV_TO_RGB = np.linalg.inv(RGB_TO_YUV)
CHROMA_OFFSET = np.array([0.0, 0.5, 0.5])

DEFAULT_CHROMA_FACTOR = 4


def rgb_to_yuv(rgb: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(H, W, 3) RGB → (Y, U, V) 三个 (H, W) 平面

    Raises:
        GeometryError: 通道数不是 3
        SignalError: 像素值超出 [0, 1]
    """
    arr = np.asarray(rgb, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise GeometryError("RGB 图像必须是 (H, W, 3) 数组", {"shape": arr.shape})
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise SignalError("RGB 像素必须位于 [0, 1]", {"min": float(arr.min()), "max": float(arr.max())})
    yuv = arr @ RGB_TO_YUV.T + CHROMA_OFFSET
    return yuv[..., 0].copy(), yuv[..., 1].copy(), yuv[..., 2].copy()


def yuv_to_rgb(y: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """(Y, U, V) → (H, W, 3) RGB，不做截断"""
    planes = [np.asarray(p, dtype=np.float64) for p in (y, u, v)]
    if not planes[0].shape == planes[1].shape == planes[2].shape:
        raise GeometryError(
            "YUV 平面尺寸不一致", {"shapes": [p.shape for p in planes]}
        )
    yuv = np.stack(planes, axis=-1) - CHROMA_OFFSET
    return yuv @ YUV_TO_RGB.T


def _check_factor(plane: np.ndarray, factor: int) -> None:
    if factor < 1:
        raise GeometryError("色度因子必须为正整数", {"factor": factor})
    if plane.ndim != 2:
        raise GeometryError("色度平面必须是二维数组", {"ndim": plane.ndim})


def chroma_down(plane: np.ndarray, factor: int = DEFAULT_CHROMA_FACTOR) -> np.ndarray:
    """盒式平均下采样

    Raises:
        GeometryError: factor 不能整除平面尺寸
    """
    arr = np.asarray(plane, dtype=np.float64)
    _check_factor(arr, factor)
    h, w = arr.shape
    if h % factor or w % factor:
        raise GeometryError("色度因子必须整除平面尺寸", {"shape": arr.shape, "factor": factor})
    if factor == 1:
        return arr.copy()
    return arr.reshape(h // factor, factor, w // factor, factor).mean(axis=(1, 3))


def chroma_up(plane: np.ndarray, factor: int = DEFAULT_CHROMA_FACTOR) -> np.ndarray:
    """双三次上采样回原尺寸

    在像素面积网格上做三次样条插值，边界反射，因此与 `chroma_down` 的
    采样中心对齐。
    """
    arr = np.asarray(plane, dtype=np.float64)
    _check_factor(arr, factor)
    if factor == 1:
        return arr.copy()
    return zoom(arr, factor, order=3, mode="reflect", grid_mode=True)
