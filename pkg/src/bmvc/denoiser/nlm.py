"""非局部均值去噪，基于 scikit-image"""

import numpy as np
from skimage.restoration import denoise_nl_means

from ..core.config import DenoiserKind
from .base import DenoiseStrength

# h = NLM_H_FACTOR · σ/255
NLM_H_FACTOR = 0.8


class NlmDenoiser:
    """NLM 去噪器

    Attributes:
        h_factor: 滤波参数 h 与 σ/255 的比例
        patch_size: 比较块边长
        patch_distance: 搜索半径
    """

    kind = DenoiserKind.NLM

    def __init__(
        self, h_factor: float = NLM_H_FACTOR, patch_size: int = 5, patch_distance: int = 6
    ) -> None:
        self.h_factor = h_factor
        self.patch_size = patch_size
        self.patch_distance = patch_distance

    def __call__(self, x: np.ndarray, strength: DenoiseStrength) -> np.ndarray:
        sigma = strength.unit
        out = denoise_nl_means(
            np.asarray(x, dtype=np.float64),
            h=self.h_factor * sigma,
            sigma=sigma,
            patch_size=self.patch_size,
            patch_distance=self.patch_distance,
            fast_mode=True,
            channel_axis=None,
        )
        return np.asarray(out, dtype=np.float64)
