"""Codec 模块

CLI 与基准测试共用的码流级编解码接口。
"""

from .factory import (
    BlockCsCodec,
    BmvcCodec,
    FrameCodec,
    RandomDsCodec,
    codec_from_header,
    codec_summary,
    create_codec,
)
from .pipeline import DecodedFrame, EncodeStats, decode_stream, encode_frames

__all__ = [
    "FrameCodec",
    "BmvcCodec",
    "RandomDsCodec",
    "BlockCsCodec",
    "create_codec",
    "codec_from_header",
    "codec_summary",
    "encode_frames",
    "decode_stream",
    "EncodeStats",
    "DecodedFrame",
]
