import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def smooth_image():
    """64×64 分段平滑测试图像"""
    yy, xx = np.mgrid[0:64, 0:64] / 64.0
    image = 0.3 + 0.3 * xx + 0.2 * yy
    image[16:40, 20:48] = 0.8
    image[(yy - 0.7) ** 2 + (xx - 0.3) ** 2 < 0.02] = 0.15
    return np.clip(image, 0.0, 1.0)
