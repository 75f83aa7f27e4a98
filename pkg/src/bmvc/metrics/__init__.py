"""Metrics 模块

PSNR、SSIM 和运行清单。
"""

from .manifest import InputRecord, RunManifest, file_md5, package_versions
from .quality import gaussian_window, mse, psnr, ssim, ssim_map

__all__ = [
    "psnr",
    "ssim",
    "ssim_map",
    "mse",
    "gaussian_window",
    "RunManifest",
    "InputRecord",
    "file_md5",
    "package_versions",
]
