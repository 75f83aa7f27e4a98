"""去噪器协议与工厂

PnP 解码器把去噪器当作隐式先验使用，只要求它满足 `DenoiserProtocol`。
"""

from dataclasses import dataclass
from typing import Protocol

import numpy as np

from ..core.config import DEFAULT_TV_ITERATIONS, DEFAULT_TV_WEIGHT, DecodeConfig, DenoiserKind
from ..core.exceptions import ConfigValidationError, SignalError
from ..core.model import Frame


@dataclass(frozen=True)
class DenoiseStrength:
    """去噪强度

    Attributes:
        sigma: 0–255 强度单位下的噪声水平
    """

    sigma: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ConfigValidationError("σ 必须为正数", {"sigma": self.sigma})

    @property
    def unit(self) -> float:
        """[0, 1] 尺度下的噪声水平 σ/255"""
        return self.sigma / 255.0


class DenoiserProtocol(Protocol):
    """去噪器协议

    Examples:
        >>> class MyDenoiser:
        ...     kind = "custom"
        ...     def __call__(self, x: np.ndarray, strength: DenoiseStrength) -> np.ndarray:
        ...         return x
    """

    kind: DenoiserKind

    def __call__(self, x: np.ndarray, strength: DenoiseStrength) -> np.ndarray:
        """对二维数组去噪，返回同形状的新数组"""
        ...


class IdentityDenoiser:
    """恒等去噪器，PnP 循环退化为纯 GAP 投影"""

    kind = DenoiserKind.IDENTITY

    def __call__(self, x: np.ndarray, strength: DenoiseStrength) -> np.ndarray:
        return np.array(x, dtype=np.float64, copy=True)


def create_denoiser(
    kind: DenoiserKind | str,
    *,
    tv_weight: float = DEFAULT_TV_WEIGHT,
    tv_iterations: int = DEFAULT_TV_ITERATIONS,
) -> DenoiserProtocol:
    """按种类创建去噪器

    Raises:
        ConfigValidationError: 未知的去噪器种类
    """
    from .nlm import NlmDenoiser
    from .tv import TvDenoiser

    try:
        kind = DenoiserKind(kind)
    except ValueError as e:
        raise ConfigValidationError("未知的去噪器种类", {"kind": kind}) from e

    if kind is DenoiserKind.TV:
        return TvDenoiser(weight=tv_weight, iterations=tv_iterations)
    if kind is DenoiserKind.NLM:
        return NlmDenoiser()
    return IdentityDenoiser()


def denoiser_for(cfg: DecodeConfig) -> DenoiserProtocol:
    return create_denoiser(
        cfg.denoiser, tv_weight=cfg.tv_weight, tv_iterations=cfg.tv_iterations
    )


def denoise(
    x: Frame, strength: DenoiseStrength, kind: DenoiserKind | str = DenoiserKind.TV
) -> Frame:
    """对帧去噪

    Args:
        x: 输入帧，可以超出 [0, 1]
        strength: 去噪强度
        kind: 去噪器种类

    Returns:
        同尺寸的去噪结果

    Raises:
        SignalError: 输出包含非有限值
    """
    out = create_denoiser(kind)(x.data, strength)
    if not np.all(np.isfinite(out)):
        raise SignalError("去噪输出包含非有限值", {"kind": str(kind)})
    return Frame(out)
