"""计时工具"""

import time
from types import TracebackType


def format_duration(seconds: float) -> str:
    """把秒数格式化为 hh:mm:ss，不足一秒时显示毫秒

    Examples:
        >>> format_duration(3725)
        '01:02:05'
        >>> format_duration(0.25)
        '250 ms'
    """
    if seconds < 1.0:
        return f"{seconds * 1000:.0f} ms"
    total = int(seconds)
    hours, rest = divmod(total, 3600)
    minutes, secs = divmod(rest, 60)
    return f"{hours:02d}:{minutes:02d}:{secs:02d}"


class Stopwatch:
    """上下文管理器形式的计时器

    Examples:
        >>> with Stopwatch() as sw:
        ...     work()
        >>> sw.elapsed
    """

    def __init__(self) -> None:
        self._start: float | None = None
        self.elapsed = 0.0

    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        if self._start is not None:
            self.elapsed = time.perf_counter() - self._start
