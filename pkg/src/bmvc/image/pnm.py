"""PGM/PPM/PBM 读写

支持二进制 P4/P5/P6 与文本 P1/P2/P3。解析器先校验头部声明的尺寸与
实际数据长度，再分配像素数组；任何畸形输入都只会抛出 ImageFormatError。
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..core.exceptions import ImageFormatError

MAX_DIMENSION = 1 << 16
_WHITESPACE = b" \t\n\r\v\f"

# magic → (通道数, 是否二进制, 是否位图)
_FORMATS = {
    b"P1": (1, False, True),
    b"P2": (1, False, False),
    b"P3": (3, False, False),
    b"P4": (1, True, True),
    b"P5": (1, True, False),
    b"P6": (3, True, False),
}


@dataclass(frozen=True, eq=False)
class PnmImage:
    """解析结果

    Attributes:
        pixels: (H, W) 或 (H, W, 3) 的整数数组
        maxval: 最大灰度值，位图为 1
        bitmap: 是否来自 P1/P4 位图
    """

    pixels: np.ndarray
    maxval: int
    bitmap: bool = False

    @property
    def channels(self) -> int:
        return 1 if self.pixels.ndim == 2 else 3

    def to_unit(self) -> np.ndarray:
        """映射到 [0, 1] 浮点；位图中 1 表示黑色，映射为 0.0"""
        unit = self.pixels.astype(np.float64) / self.maxval
        return 1.0 - unit if self.bitmap else unit


class _Tokenizer:
    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 0

    def _skip(self) -> None:
        data = self.data
        while self.pos < len(data):
            ch = data[self.pos : self.pos + 1]
            if ch == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            elif ch in _WHITESPACE:
                self.pos += 1
            else:
                break

    def integer(self, name: str) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos : self.pos + 1].isdigit():
            self.pos += 1
            if self.pos - start > 10:
                raise ImageFormatError("PNM 数值过长", {"field": name})
        if start == self.pos:
            raise ImageFormatError("PNM 头部缺少数值", {"field": name, "offset": start})
        return int(self.data[start : self.pos])

    def single_whitespace(self) -> None:
        if self.pos >= len(self.data) or self.data[self.pos : self.pos + 1] not in _WHITESPACE:
            raise ImageFormatError("PNM 头部之后缺少分隔空白", {"offset": self.pos})
        self.pos += 1


def parse_pnm(data: bytes) -> PnmImage:
    """解析 PNM 字节串

    Raises:
        ImageFormatError: 魔数未知、头部畸形、尺寸越界或数据被截断
    """
    fmt = _FORMATS.get(bytes(data[:2]))
    if fmt is None:
        raise ImageFormatError("不是 PNM 文件", {"magic": bytes(data[:2]).hex()})
    channels, binary, bitmap = fmt

    tokens = _Tokenizer(bytes(data))
    tokens.pos = 2
    width = tokens.integer("width")
    height = tokens.integer("height")
    maxval = 1 if bitmap else tokens.integer("maxval")
    if not (1 <= width <= MAX_DIMENSION and 1 <= height <= MAX_DIMENSION):
        raise ImageFormatError("PNM 尺寸越界", {"width": width, "height": height})
    if not 1 <= maxval <= 0xFFFF:
        raise ImageFormatError("PNM maxval 越界", {"maxval": maxval})

    count = width * height * channels
    if binary:
        tokens.single_whitespace()
        body = tokens.data[tokens.pos :]
        if bitmap:
            row_bytes = (width + 7) // 8
            needed = row_bytes * height
            if len(body) < needed:
                raise ImageFormatError("PBM 数据被截断", {"needed": needed, "actual": len(body)})
            packed = np.frombuffer(body, dtype=np.uint8, count=needed).reshape(height, row_bytes)
            pixels = np.unpackbits(packed, axis=1)[:, :width]
        else:
            dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
            needed = count * dtype.itemsize
            if len(body) < needed:
                raise ImageFormatError("PNM 数据被截断", {"needed": needed, "actual": len(body)})
            pixels = np.frombuffer(body, dtype=dtype, count=count).astype(np.uint16)
    else:
        values = []
        for _ in range(count):
            if bitmap:
                tokens._skip()
                ch = tokens.data[tokens.pos : tokens.pos + 1]
                if ch not in (b"0", b"1"):
                    raise ImageFormatError("PBM 文本像素无效", {"offset": tokens.pos})
                values.append(int(ch))
                tokens.pos += 1
            else:
                values.append(tokens.integer("pixel"))
        pixels = np.array(values, dtype=np.int64)

    if int(pixels.max()) > maxval:
        raise ImageFormatError("像素值超过 maxval", {"maxval": maxval})
    shape = (height, width) if channels == 1 else (height, width, 3)
    return PnmImage(
        pixels=pixels.reshape(shape).astype(np.uint16), maxval=maxval, bitmap=bitmap
    )


def read_pnm(path: Path) -> PnmImage:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise ImageFormatError(f"无法读取图像: {e}", {"path": str(path)}) from e
    return parse_pnm(data)


def _to_bytes(plane: np.ndarray) -> np.ndarray:
    return np.floor(np.clip(plane, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


def encode_pgm(plane: np.ndarray) -> bytes:
    """[0, 1] 灰度平面 → 8 位 P5"""
    arr = np.asarray(plane, dtype=np.float64)
    if arr.ndim != 2:
        raise ImageFormatError("PGM 需要二维数组", {"ndim": arr.ndim})
    h, w = arr.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + _to_bytes(arr).tobytes()


def encode_ppm(rgb: np.ndarray) -> bytes:
    """[0, 1] RGB → 8 位 P6"""
    arr = np.asarray(rgb, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ImageFormatError("PPM 需要 (H, W, 3) 数组", {"shape": arr.shape})
    h, w, _ = arr.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + _to_bytes(arr).tobytes()


def encode_pbm(bits: np.ndarray) -> bytes:
    """二值数组 → P4，每行按字节补齐"""
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 2:
        raise ImageFormatError("PBM 需要二维数组", {"ndim": arr.ndim})
    h, w = arr.shape
    return f"P4\n{w} {h}\n".encode("ascii") + np.packbits(arr, axis=1).tobytes()


def write_pgm(path: Path, plane: np.ndarray) -> Path:
    return _write(path, encode_pgm(plane))


def write_ppm(path: Path, rgb: np.ndarray) -> Path:
    return _write(path, encode_ppm(rgb))


def write_pbm(path: Path, bits: np.ndarray) -> Path:
    return _write(path, encode_pbm(bits))


def _write(path: Path, data: bytes) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    return path
