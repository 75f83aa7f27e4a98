"""PnP-GAP 迭代解码器

交替执行 GAP 投影与去噪：
    x⁽ʲ⁺¹⁾ = v⁽ʲ⁾ + Φᵀ R⁺ (y − Φ v⁽ʲ⁾)
    v⁽ʲ⁺¹⁾ = Denoise(x⁽ʲ⁺¹⁾, σ_j)
循环只依赖 `Projector` 协议，BMVC、Random DS 和 Block CS 共用同一实现。
"""

import logging
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from ..core.config import DecodeConfig, DecodeTrace, IterationRecord, format_schedule
from ..core.exceptions import GeometryError, SignalError
from ..core.model import Frame, Measurement
from ..denoiser.base import DenoiserProtocol, DenoiseStrength, denoiser_for
from ..metrics.quality import psnr

logger = logging.getLogger(__name__)

# 最终残差超过历史最小值的该倍数时视为未收敛
RESIDUAL_GROWTH_LIMIT = 2.0


class Projector(Protocol):
    """测量一致集合上的投影算子

    Examples:
        >>> class MyProjector:
        ...     frame_shape = (64, 64)
        ...     def check(self, y): ...
        ...     def initial(self, y): return np.zeros(self.frame_shape)
        ...     def project(self, v, y): return v
        ...     def residual(self, x, y): return np.zeros_like(y)
    """

    @property
    def frame_shape(self) -> tuple[int, int]: ...

    def check(self, y: np.ndarray) -> None:
        """检查测量尺寸和可解性，失败时抛出 BmvcError"""
        ...

    def initial(self, y: np.ndarray) -> np.ndarray:
        """默认初始化 v⁽⁰⁾"""
        ...

    def project(self, v: np.ndarray, y: np.ndarray) -> np.ndarray:
        """把 v 投影到 {x : Φx = y}"""
        ...

    def residual(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """y − Φx"""
        ...


@dataclass
class DecodeResult:
    """解码结果

    Attributes:
        frame: 截断到 [0, 1] 的重建帧
        trace: 逐次迭代轨迹
    """

    frame: Frame
    trace: DecodeTrace

    @property
    def converged(self) -> bool:
        return self.trace.residual_growth <= RESIDUAL_GROWTH_LIMIT


def _measurement_array(y: Measurement | np.ndarray) -> np.ndarray:
    if isinstance(y, Measurement):
        return y.values
    arr = np.asarray(y, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise SignalError("测量值包含非有限数")
    return arr


def decode(
    y: Measurement | np.ndarray,
    op: Projector,
    cfg: DecodeConfig | None = None,
    init: Frame | None = None,
    *,
    reference: Frame | None = None,
    denoiser: DenoiserProtocol | None = None,
) -> DecodeResult:
    """PnP-GAP 解码

    Args:
        y: 测量值
        op: 投影算子（BmvcOperator、RandomDsProjector 或 BlockCsOperator）
        cfg: 解码配置，默认 σ = [20, 10, 5] 各 20 次
        init: 初始估计，默认 op.initial(y)
        reference: 参考帧，给出时轨迹记录每次迭代的 PSNR
        denoiser: 自定义去噪器，默认按 cfg.denoiser 创建

    Returns:
        DecodeResult，包含截断到 [0, 1] 的重建帧和轨迹

    Raises:
        GeometryError: 尺寸不一致
        DegenerateMaskError: 掩码全零
    """
    cfg = cfg or DecodeConfig()
    y_arr = _measurement_array(y)
    op.check(y_arr)
    prior = denoiser or denoiser_for(cfg)

    if init is None:
        v = op.initial(y_arr)
    else:
        if init.shape != tuple(op.frame_shape):
            raise GeometryError(
                "初始估计尺寸与帧尺寸不匹配",
                {"expected": tuple(op.frame_shape), "actual": init.shape},
            )
        v = np.array(init.data, copy=True)

    if reference is not None and reference.shape != tuple(op.frame_shape):
        raise GeometryError(
            "参考帧尺寸与帧尺寸不匹配",
            {"expected": tuple(op.frame_shape), "actual": reference.shape},
        )

    logger.debug(
        "开始解码: frame=%s, schedule=%s, denoiser=%s",
        op.frame_shape,
        format_schedule(cfg.sigma_schedule),
        cfg.denoiser.value,
    )

    trace = DecodeTrace()
    for iteration, sigma in enumerate(cfg.sigmas(), start=1):
        x = op.project(v, y_arr)
        projection_residual = float(np.max(np.abs(op.residual(x, y_arr)), initial=0.0))
        v = prior(x, DenoiseStrength(sigma))
        residual = float(np.linalg.norm(op.residual(v, y_arr)))
        quality = (
            psnr(reference, np.clip(v, 0.0, 1.0)) if reference is not None else None
        )
        trace.append(
            IterationRecord(
                iteration=iteration,
                sigma=sigma,
                residual=residual,
                projection_residual=projection_residual,
                psnr=quality,
            )
        )

    if cfg.final_projection:
        v = op.project(v, y_arr)
    if not np.all(np.isfinite(v)):
        raise SignalError("解码结果包含非有限值")

    result = DecodeResult(frame=Frame(np.clip(v, 0.0, 1.0)), trace=trace)
    if not result.converged:
        logger.warning(
            "解码残差增长 %.2f 倍，可能未收敛 (schedule=%s)",
            trace.residual_growth,
            format_schedule(cfg.sigma_schedule),
        )
    logger.debug(
        "解码完成: iterations=%d, final_residual=%.3e",
        len(trace),
        trace.records[-1].residual,
    )
    return result
