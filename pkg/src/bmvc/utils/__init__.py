"""Utils 模块"""

from .logging import DEFAULT_FORMAT, get_logger
from .timing import Stopwatch, format_duration

__all__ = ["get_logger", "DEFAULT_FORMAT", "Stopwatch", "format_duration"]
