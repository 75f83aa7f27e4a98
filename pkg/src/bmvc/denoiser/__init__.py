"""Denoiser 模块

PnP 解码器使用的可插拔去噪先验：TV（默认）、NLM 和恒等去噪器。
"""

from .base import (
    DenoiserProtocol,
    DenoiseStrength,
    IdentityDenoiser,
    create_denoiser,
    denoise,
    denoiser_for,
)
from .nlm import NLM_H_FACTOR, NlmDenoiser
from .tv import TvDenoiser, anisotropic_tv, divergence, gradient, tv_denoise, tv_objective

__all__ = [
    "DenoiserProtocol",
    "DenoiseStrength",
    "IdentityDenoiser",
    "TvDenoiser",
    "NlmDenoiser",
    "NLM_H_FACTOR",
    "create_denoiser",
    "denoiser_for",
    "denoise",
    "tv_denoise",
    "tv_objective",
    "anisotropic_tv",
    "gradient",
    "divergence",
]
