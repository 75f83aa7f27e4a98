"""均匀量化

码值 code = round(y / y_max · (2^bits − 1))，舍入规则固定为远离零取整，
以便不同实现生成逐字节一致的码流。
"""

import numpy as np

from ..core.exceptions import QuantizationError
from ..core.model import Measurement, QuantSpec

# 浮点累加可能让 y 在 y_max 之上留下极小的偏差
_SCALE_TOLERANCE = 1e-12


def quantize(measurement: Measurement | np.ndarray, spec: QuantSpec) -> np.ndarray:
    """把测量值量化为整数码

    Args:
        measurement: 测量值，取值应位于 [0, y_max]
        spec: 量化规格

    Returns:
        与输入同形状的 uint16 码值数组

    Raises:
        QuantizationError: 存在超出 [0, y_max] 的测量值（通常意味着掩码或几何不匹配）
    """
    y = measurement.values if isinstance(measurement, Measurement) else np.asarray(measurement)
    y = y.astype(np.float64, copy=False)
    if not np.all(np.isfinite(y)):
        raise QuantizationError("测量值包含非有限数")

    slack = spec.y_max * _SCALE_TOLERANCE
    high = float(y.max(initial=0.0))
    low = float(y.min(initial=0.0))
    if high > spec.y_max + slack or low < -slack:
        raise QuantizationError(
            "测量值超出量化尺度，掩码或几何可能不匹配",
            {"min": low, "max": high, "y_max": spec.y_max},
        )

    scaled = np.clip(y, 0.0, spec.y_max) / spec.y_max * spec.levels
    # 非负数上 floor(x + 0.5) 即远离零舍入
    codes = np.floor(scaled + 0.5)
    return np.clip(codes, 0, spec.levels).astype(np.uint16)


def dequantize(codes: np.ndarray, spec: QuantSpec) -> Measurement:
    """码值还原为测量值 y = code · y_max / (2^bits − 1)

    Raises:
        QuantizationError: 码值为负或超过 2^bits − 1
    """
    arr = np.asarray(codes)
    if arr.ndim != 2:
        raise QuantizationError("码值必须是二维数组", {"ndim": arr.ndim})
    if not np.issubdtype(arr.dtype, np.integer):
        raise QuantizationError("码值必须是整数", {"dtype": str(arr.dtype)})
    if arr.size and (int(arr.min()) < 0 or int(arr.max()) > spec.levels):
        raise QuantizationError(
            "码值超出范围",
            {"min": int(arr.min()), "max": int(arr.max()), "levels": spec.levels},
        )
    return Measurement(arr.astype(np.float64) * spec.y_max / spec.levels)
