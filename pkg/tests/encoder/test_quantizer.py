"""
均匀量化器的单元测试
"""

import numpy as np
import pytest

from bmvc.core import Measurement, QuantizationError, QuantSpec
from bmvc.encoder import dequantize, quantize


class TestQuantize:
    """测试 quantize"""

    def test_endpoints(self):
        """0 → 0，y_max → 2^bits − 1"""
        spec = QuantSpec(bits=10, y_max=4.0)
        codes = quantize(Measurement(np.array([[0.0, 4.0]])), spec)
        assert codes.tolist() == [[0, 1023]]
        assert codes.dtype == np.uint16

    def test_half_rounds_away_from_zero(self):
        """y = 1.5, y_max = 3, 8 位 → 128"""
        codes = quantize(np.array([[1.5]]), QuantSpec(bits=8, y_max=3.0))
        assert codes[0, 0] == 128

    def test_monotone(self, rng):
        """码值随测量值单调不减"""
        spec = QuantSpec(bits=8, y_max=7.0)
        y = np.sort(rng.uniform(0, 7.0, size=500)).reshape(1, -1)
        assert np.all(np.diff(quantize(y, spec).astype(int)) >= 0)

    def test_tolerates_rounding_above_scale(self):
        """略高于 y_max 的浮点误差被截断"""
        spec = QuantSpec(bits=8, y_max=3.0)
        assert quantize(np.array([[3.0 + 1e-13]]), spec)[0, 0] == 255

    @pytest.mark.parametrize("value", [3.1, -0.01, np.inf])
    def test_rejects_out_of_range(self, value):
        """超出 [0, y_max] 或非有限的测量值被拒绝"""
        with pytest.raises(QuantizationError):
            quantize(np.array([[value]]), QuantSpec(bits=8, y_max=3.0))


class TestDequantize:
    """测试 dequantize"""

    def test_endpoints(self):
        """0 → 0.0，2^bits − 1 → y_max"""
        spec = QuantSpec(bits=8, y_max=5.0)
        y = dequantize(np.array([[0, 255]], dtype=np.uint16), spec)
        assert y.values.tolist() == [[0.0, 5.0]]

    def test_round_trip_error_bound(self, rng):
        """16 位往返误差不超过 y_max/131070"""
        spec = QuantSpec(bits=16, y_max=9.0)
        y = rng.uniform(0, 9.0, size=(32, 32))
        restored = dequantize(quantize(y, spec), spec).values
        assert np.max(np.abs(restored - y)) <= 9.0 / 131070 + 1e-12

    @pytest.mark.parametrize("bits", [8, 12])
    def test_round_trip_bound_all_depths(self, rng, bits):
        """任意位深的往返误差不超过半个量化步长"""
        spec = QuantSpec(bits=bits, y_max=2.0)
        y = rng.uniform(0, 2.0, size=(8, 8))
        restored = dequantize(quantize(y, spec), spec).values
        assert np.max(np.abs(restored - y)) <= spec.max_error + 1e-12

    def test_rejects_codes_above_levels(self):
        """码值超过 2^bits − 1 时报错"""
        with pytest.raises(QuantizationError):
            dequantize(np.array([[256]]), QuantSpec(bits=8, y_max=1.0))

    def test_rejects_float_codes(self):
        """浮点码值被拒绝"""
        with pytest.raises(QuantizationError):
            dequantize(np.array([[1.0]]), QuantSpec(bits=8, y_max=1.0))
