"""合成测试图像

分段平滑的灰度图：线性渐变背景，叠加若干常值圆盘与矩形，再加一层弱的
低通纹理。同一 (count, size, seed) 总是生成完全相同的图像集。
"""

import numpy as np
from scipy import ndimage

TEXTURE_AMPLITUDE = 0.03
_MARGIN = 0.02


def synthetic_image(size: int, rng: np.random.Generator) -> np.ndarray:
    """生成一幅 (size, size) 的合成图像，取值 [0.02, 0.98]"""
    yy, xx = np.mgrid[0:size, 0:size] / float(size)
    image = rng.uniform(0.3, 0.6) + rng.uniform(-0.2, 0.2) * xx + rng.uniform(-0.2, 0.2) * yy

    for _ in range(int(rng.integers(3, 8))):
        level = rng.uniform(0.1, 0.9)
        cy, cx = rng.uniform(0.1, 0.9, size=2)
        if rng.random() < 0.5:
            radius = rng.uniform(0.08, 0.3)
            region = (yy - cy) ** 2 + (xx - cx) ** 2 < radius**2
        else:
            hh, hw = rng.uniform(0.05, 0.25, size=2)
            region = (np.abs(yy - cy) < hh) & (np.abs(xx - cx) < hw)
        image[region] = level

    texture = ndimage.gaussian_filter(rng.standard_normal((size, size)), sigma=1.0)
    texture /= max(float(texture.std()), 1e-12)
    image = image + TEXTURE_AMPLITUDE * texture
    return np.clip(image, _MARGIN, 1.0 - _MARGIN)


def synthetic_test_set(
    count: int = 5, size: int = 64, seed: int = 42
) -> list[tuple[str, np.ndarray]]:
    """生成确定性的合成测试集

    Returns:
        [(名称, 图像)]，名称形如 "synthetic_00"
    """
    images = []
    for index in range(count):
        rng = np.random.default_rng([seed, index])
        images.append((f"synthetic_{index:02d}", synthetic_image(size, rng)))
    return images
