"""确定性伪随机数发生器

SplitMix64 把 64 位种子扩展为 xoshiro256** 的 256 位状态。
算法被完整固定，使得编码端和解码端只需共享 8 字节种子即可得到逐位一致的掩码。
"""

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class SplitMix64:
    """SplitMix64 发生器，仅用于播种"""

    def __init__(self, seed: int) -> None:
        self._state = seed & MASK64

    def next(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


class Xoshiro256StarStar:
    """xoshiro256** 1.0

    Attributes:
        state: 四个 64 位状态字
    """

    def __init__(self, state: tuple[int, int, int, int]) -> None:
        if len(state) != 4:
            raise ValueError("xoshiro256** 需要 4 个状态字")
        if not any(state):
            raise ValueError("xoshiro256** 状态不能全为零")
        self._s = [s & MASK64 for s in state]

    @classmethod
    def from_seed(cls, seed: int) -> "Xoshiro256StarStar":
        """用 SplitMix64 扩展 64 位种子"""
        mixer = SplitMix64(seed)
        return cls((mixer.next(), mixer.next(), mixer.next(), mixer.next()))

    @property
    def state(self) -> tuple[int, int, int, int]:
        return (self._s[0], self._s[1], self._s[2], self._s[3])

    def next(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64

        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]

        s[2] ^= t
        s[3] = _rotl(s[3], 45)

        return result

    def next_below(self, bound: int) -> int:
        """返回 next() mod bound"""
        if bound < 1:
            raise ValueError("bound 必须为正整数")
        return self.next() % bound

    def top_bits(self, count: int) -> np.ndarray:
        """连续 count 个输出的最高位，返回 uint8 数组

        这是掩码生成的热点路径，状态保存在局部变量中逐步推进。
        """
        out = bytearray(count)
        s0, s1, s2, s3 = self._s
        for k in range(count):
            r = (s1 * 5) & MASK64
            result = ((((r << 7) | (r >> 57)) & MASK64) * 9) & MASK64
            t = (s1 << 17) & MASK64
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
            out[k] = result >> 63
        self._s = [s0, s1, s2, s3]
        return np.frombuffer(bytes(out), dtype=np.uint8).copy()
