"""日志配置工具

库代码只调用 `logging.getLogger(__name__)`，处理器由 CLI 通过 `get_logger` 统一配置。
"""

import logging
import sys

DEFAULT_FORMAT = "[%(asctime)s] [%(name)s] [%(levelname)s] %(message)s"


def get_logger(
    name: str = "bmvc",
    level: int = logging.INFO,
    format_string: str | None = None,
) -> logging.Logger:
    """获取配置好的日志记录器

    重复调用只更新级别，不会重复添加处理器。

    Args:
        name: 日志记录器名称，CLI 使用包名 "bmvc" 以覆盖全部子模块
        level: 日志级别
        format_string: 自定义格式，默认 `DEFAULT_FORMAT`

    Examples:
        >>> logger = get_logger("bmvc", level=logging.DEBUG)
        >>> logger.debug("调试信息")
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)

    if logger.handlers:
        for handler in logger.handlers:
            handler.setLevel(level)
            # sys.stdout 可能已被替换（如 CliRunner），跟随当前的标准输出
            if type(handler) is logging.StreamHandler:
                handler.stream = sys.stdout
        return logger

    handler = logging.StreamHandler(sys.stdout)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(format_string or DEFAULT_FORMAT))
    logger.addHandler(handler)
    return logger
