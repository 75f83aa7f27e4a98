"""BMVC 异常定义

定义了编解码器的异常层次结构，用于表示不同类型的错误。
库代码只负责抛出异常，退出码的转换由 CLI 完成。
"""


class BmvcError(Exception):
    """BMVC 基础异常类

    所有编解码器相关的自定义异常都应该继承此类。

    Attributes:
        message: 错误消息
        details: 可选的详细错误信息
    """

    def __init__(self, message: str, details: dict[str, object] | None = None) -> None:
        """初始化 BmvcError

        Args:
            message: 错误消息
            details: 可选的详细错误信息字典
        """
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        """返回错误的字符串表示"""
        if self.details:
            details_str = ", ".join(f"{k}={v}" for k, v in self.details.items())
            return f"{self.message} ({details_str})"
        return self.message


class GeometryError(BmvcError):
    """几何错误

    块尺寸不能整除帧尺寸、尺寸为零或输入尺寸不匹配时抛出。

    Examples:
        >>> raise GeometryError("块高度必须整除帧高度", {"frame_height": 1080, "block_height": 100})
    """

    pass


class SignalError(BmvcError):
    """信号错误

    像素值非有限或超出 [0, 1] 范围时抛出。
    """

    pass


class DegenerateMaskError(BmvcError):
    """退化掩码错误

    掩码在所有块内位置都为零（所有 r_i = 0）时抛出，此时测量不包含任何信息。
    """

    pass


class QuantizationError(BmvcError):
    """量化错误

    位深超出 [8, 16]、测量值超过量化尺度或码值越界时抛出。
    """

    pass


class ContainerError(BmvcError):
    """码流容器错误

    魔数、版本不可识别，负载被截断或头部不满足不变量时抛出。
    """

    pass


class ImageFormatError(BmvcError):
    """图像格式错误

    PNM/PNG 文件无法解析时抛出。
    """

    pass


class ConfigValidationError(BmvcError):
    """配置验证失败错误

    解码配置、调度字符串或设置文件无效时抛出。

    Examples:
        >>> raise ConfigValidationError("σ 必须为正数", {"sigma": 0})
    """

    pass
