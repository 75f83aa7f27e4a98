"""Container 模块

.bmvc 码流格式的读写。
"""

from .stream import (
    HEADER_SIZE,
    MAGIC,
    VERSION,
    CodecId,
    ColorMode,
    EncodedFrame,
    EncodedStream,
    StreamHeader,
    load_stream,
    read_stream,
    save_stream,
    write_stream,
)

__all__ = [
    "StreamHeader",
    "EncodedFrame",
    "EncodedStream",
    "CodecId",
    "ColorMode",
    "write_stream",
    "read_stream",
    "save_stream",
    "load_stream",
    "MAGIC",
    "VERSION",
    "HEADER_SIZE",
]
