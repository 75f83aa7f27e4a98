"""各向异性全变分去噪

求解 min_u ½‖u − x‖² + λ·TV(u)，TV(u) = Σ|∂_h u| + Σ|∂_v u|。
对偶变量 p = (p_h, p_v) 约束在 [−1, 1] 盒内，用带 Beck–Teboulle 动量的
投影梯度（FGP）迭代固定次数，原变量 u = x + λ·div p。
边界采用 Neumann 条件：最后一行/列的前向差分为 0。
"""

import numpy as np

from ..core.config import DEFAULT_TV_ITERATIONS, DEFAULT_TV_WEIGHT, DenoiserKind
from ..core.exceptions import ConfigValidationError
from .base import DenoiseStrength


def gradient(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """前向差分，返回 (水平, 垂直) 分量"""
    gh = np.zeros_like(u)
    gv = np.zeros_like(u)
    gh[:, :-1] = u[:, 1:] - u[:, :-1]
    gv[:-1, :] = u[1:, :] - u[:-1, :]
    return gh, gv


def divergence(ph: np.ndarray, pv: np.ndarray) -> np.ndarray:
    """−gradientᵀ，与 `gradient` 构成伴随对"""
    zh = ph.copy()
    zh[:, -1] = 0.0
    zv = pv.copy()
    zv[-1, :] = 0.0

    div = zh + zv
    div[:, 1:] -= zh[:, :-1]
    div[1:, :] -= zv[:-1, :]
    return div


def anisotropic_tv(u: np.ndarray) -> float:
    gh, gv = gradient(np.asarray(u, dtype=np.float64))
    return float(np.abs(gh).sum() + np.abs(gv).sum())


def tv_objective(u: np.ndarray, x: np.ndarray, weight: float) -> float:
    """½‖u − x‖² + λ·TV(u)"""
    diff = np.asarray(u, dtype=np.float64) - np.asarray(x, dtype=np.float64)
    return 0.5 * float(np.sum(diff * diff)) + weight * anisotropic_tv(u)


def tv_denoise(x: np.ndarray, weight: float, iterations: int = DEFAULT_TV_ITERATIONS) -> np.ndarray:
    """TV 近端算子

    Args:
        x: 二维输入
        weight: 正则权重 λ
        iterations: 对偶迭代次数，固定执行不提前停止

    Returns:
        去噪结果，均值与输入相同
    """
    if not weight > 0:
        raise ConfigValidationError("TV 权重必须为正数", {"weight": weight})
    if iterations < 1:
        raise ConfigValidationError("TV 迭代次数必须至少为 1", {"iterations": iterations})

    x = np.asarray(x, dtype=np.float64)
    step = 1.0 / (8.0 * weight)

    ph = np.zeros_like(x)
    pv = np.zeros_like(x)
    qh, qv = ph, pv
    t = 1.0
    for _ in range(iterations):
        gh, gv = gradient(x + weight * divergence(qh, qv))
        ph_next = np.clip(qh + step * gh, -1.0, 1.0)
        pv_next = np.clip(qv + step * gv, -1.0, 1.0)

        t_next = (1.0 + np.sqrt(1.0 + 4.0 * t * t)) / 2.0
        momentum = (t - 1.0) / t_next
        qh = ph_next + momentum * (ph_next - ph)
        qv = pv_next + momentum * (pv_next - pv)
        ph, pv, t = ph_next, pv_next, t_next

    return x + weight * divergence(ph, pv)


class TvDenoiser:
    """TV 去噪器，λ = weight · σ/255

    Attributes:
        weight: σ→λ 映射系数
        iterations: 每次调用的对偶迭代次数
    """

    kind = DenoiserKind.TV

    def __init__(
        self, weight: float = DEFAULT_TV_WEIGHT, iterations: int = DEFAULT_TV_ITERATIONS
    ) -> None:
        if not weight > 0:
            raise ConfigValidationError("tv_weight 必须为正数", {"tv_weight": weight})
        if iterations < 1:
            raise ConfigValidationError("tv_iterations 必须至少为 1", {"tv_iterations": iterations})
        self.weight = weight
        self.iterations = iterations

    def strength_to_weight(self, strength: DenoiseStrength) -> float:
        return self.weight * strength.unit

    def __call__(self, x: np.ndarray, strength: DenoiseStrength) -> np.ndarray:
        return tv_denoise(x, self.strength_to_weight(strength), self.iterations)
