"""图像质量指标

PSNR 与 SSIM 只在 Y 平面上计算，数据范围固定为 1。
"""

import math

import numpy as np
from scipy.signal import convolve2d

from ..core.exceptions import GeometryError
from ..core.model import Frame

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03


def _as_array(image: Frame | np.ndarray) -> np.ndarray:
    if isinstance(image, Frame):
        return image.data
    return np.asarray(image, dtype=np.float64)


def _check_pair(ref: np.ndarray, test: np.ndarray) -> None:
    if ref.shape != test.shape:
        raise GeometryError("图像尺寸不一致", {"ref": ref.shape, "test": test.shape})
    if ref.ndim != 2:
        raise GeometryError("只支持单通道图像", {"ndim": ref.ndim})


def mse(ref: Frame | np.ndarray, test: Frame | np.ndarray) -> float:
    a, b = _as_array(ref), _as_array(test)
    _check_pair(a, b)
    diff = a - b
    return float(np.mean(diff * diff))


def psnr(ref: Frame | np.ndarray, test: Frame | np.ndarray) -> float:
    """峰值信噪比 10·log10(1/MSE)

    Returns:
        分贝值；MSE 为 0 时返回 +inf
    """
    err = mse(ref, test)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / err)


def gaussian_window(size: int = SSIM_WINDOW, sigma: float = SSIM_SIGMA) -> np.ndarray:
    """归一化的二维高斯窗"""
    offsets = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    g = np.exp(-(offsets**2) / (2.0 * sigma * sigma))
    g /= g.sum()
    return np.outer(g, g)


def ssim_map(ref: Frame | np.ndarray, test: Frame | np.ndarray) -> np.ndarray:
    """逐窗口 SSIM，仅包含完整落在图像内的窗口"""
    a, b = _as_array(ref), _as_array(test)
    _check_pair(a, b)
    if min(a.shape) < SSIM_WINDOW:
        raise GeometryError(
            f"SSIM 要求图像边长至少为 {SSIM_WINDOW}", {"shape": a.shape}
        )

    window = gaussian_window()

    def filt(img: np.ndarray) -> np.ndarray:
        return convolve2d(img, window, mode="valid")

    c1 = (SSIM_K1 * 1.0) ** 2
    c2 = (SSIM_K2 * 1.0) ** 2

    mu_a = filt(a)
    mu_b = filt(b)
    # 总体（有偏）方差与协方差
    var_a = filt(a * a) - mu_a * mu_a
    var_b = filt(b * b) - mu_b * mu_b
    cov = filt(a * b) - mu_a * mu_b

    num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)
    den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    return num / den


def ssim(ref: Frame | np.ndarray, test: Frame | np.ndarray) -> float:
    """结构相似度，11×11 高斯窗 σ=1.5，K1=0.01，K2=0.03

    Raises:
        GeometryError: 尺寸不一致或边长小于 11
    """
    return float(np.mean(ssim_map(ref, test)))
