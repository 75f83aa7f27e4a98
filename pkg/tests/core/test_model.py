"""
核心数据模型的单元测试

测试帧、掩码、块几何、测量值与量化规格的构造校验和坐标映射。
"""

import numpy as np
import pytest

from bmvc.core import (
    HD_BLOCK_PRESETS,
    BlockGeometry,
    Frame,
    GeometryError,
    MaskPlane,
    Measurement,
    QuantizationError,
    QuantSpec,
    SignalError,
    geometry_for_ratio,
)


class TestFrame:
    """测试 Frame"""

    def test_frame_is_read_only_copy(self):
        """帧保存只读副本"""
        source = np.zeros((4, 4))
        frame = Frame(source)
        source[0, 0] = 1.0
        assert frame.data[0, 0] == 0.0
        with pytest.raises(ValueError):
            frame.data[0, 0] = 1.0

    def test_rejects_non_2d(self):
        """非二维数组被拒绝"""
        with pytest.raises(GeometryError):
            Frame(np.zeros(8))

    def test_rejects_non_finite(self):
        """非有限像素被拒绝"""
        data = np.zeros((2, 2))
        data[1, 1] = np.nan
        with pytest.raises(SignalError):
            Frame(data)

    def test_require_unit_range(self):
        """编码输入必须在 [0, 1]"""
        Frame(np.full((2, 2), 0.5)).require_unit_range()
        with pytest.raises(SignalError):
            Frame(np.full((2, 2), 1.5)).require_unit_range()

    def test_uint8_mapping(self):
        """8 位像素按 n/255 往返"""
        pixels = np.arange(256, dtype=np.uint8).reshape(16, 16)
        frame = Frame.from_uint8(pixels)
        assert frame.data[0, 1] == pytest.approx(1 / 255)
        assert np.array_equal(frame.to_uint8(), pixels)


class TestMaskPlane:
    """测试 MaskPlane"""

    def test_accepts_binary(self):
        """二值数组可以构造掩码"""
        mask = MaskPlane(np.array([[0, 1], [1, 1]]), seed=3)
        assert mask.fraction_of_ones == 0.75
        assert mask.bits.dtype == np.uint8

    def test_rejects_non_binary(self):
        """非 0/1 值被拒绝"""
        with pytest.raises(SignalError):
            MaskPlane(np.array([[0, 2]]), seed=0)

    def test_rejects_large_seed(self):
        """种子必须是 64 位无符号整数"""
        with pytest.raises(GeometryError):
            MaskPlane(np.ones((1, 1)), seed=2**64)


class TestBlockGeometry:
    """测试 BlockGeometry"""

    def test_compression_ratio_equals_block_count(self):
        """Cr 等于块数"""
        geom = BlockGeometry(64, 64, 16, 32)
        assert geom.num_blocks == 8
        assert geom.compression_ratio == 8

    @pytest.mark.parametrize("dims", [(64, 64, 24, 16), (64, 64, 16, 24), (0, 4, 1, 1)])
    def test_rejects_illegal_geometry(self, dims):
        """不整除或为零的尺寸被拒绝"""
        with pytest.raises(GeometryError):
            BlockGeometry(*dims)

    def test_hd_example(self):
        """1080×1920 帧配 270×320 块得到 Cr=24"""
        assert BlockGeometry(1080, 1920, 270, 320).compression_ratio == 24

    def test_block_index_map_is_bijection(self):
        """块索引映射覆盖每个像素恰好一次"""
        geom = BlockGeometry(6, 8, 3, 2)
        index_map = geom.block_index_map()
        assert index_map.shape == (geom.num_blocks, geom.block_pixels)
        assert np.array_equal(np.sort(index_map.ravel()), np.arange(48))

    def test_locate_and_pixel_of_are_inverse(self):
        """像素坐标与块坐标互逆"""
        geom = BlockGeometry(6, 8, 3, 2)
        index_map = geom.block_index_map()
        for row in range(6):
            for col in range(8):
                block, inner = geom.locate(row, col)
                assert geom.pixel_of(block, inner) == (row, col)
                assert index_map[block, inner] == row * 8 + col

    def test_blocks_round_trip(self):
        """to_blocks 与 from_blocks 互逆"""
        geom = BlockGeometry(4, 6, 2, 3)
        frame = np.arange(24, dtype=float).reshape(4, 6)
        blocks = geom.to_blocks(frame)
        assert np.array_equal(blocks[1], [3, 4, 5, 9, 10, 11])
        assert np.array_equal(geom.from_blocks(blocks), frame)

    def test_locate_out_of_range(self):
        """越界坐标报错"""
        with pytest.raises(GeometryError):
            BlockGeometry(4, 4, 2, 2).locate(4, 0)


class TestGeometryForRatio:
    """测试 geometry_for_ratio"""

    def test_prefers_square_split(self):
        """64×64 帧 Cr=16 选择 4×4 块网格"""
        geom = geometry_for_ratio(64, 64, 16)
        assert geom.block_shape == (16, 16)

    def test_cr_one(self):
        """Cr=1 时块即整帧"""
        assert geometry_for_ratio(10, 12, 1).block_shape == (10, 12)

    def test_impossible_ratio(self):
        """找不到整除分解时报错"""
        with pytest.raises(GeometryError):
            geometry_for_ratio(7, 7, 4)

    def test_hd_presets(self):
        """高清预设的压缩比覆盖 24 到 150"""
        ratios = [p.compression_ratio for p in HD_BLOCK_PRESETS]
        assert min(ratios) == 24
        assert max(ratios) == 150


class TestMeasurementAndQuantSpec:
    """测试 Measurement 与 QuantSpec"""

    def test_measurement_shape(self):
        """测量值保存块形状"""
        y = Measurement(np.ones((2, 3)))
        assert y.shape == (2, 3)

    def test_quant_spec_step(self):
        """8 位量化步长为 y_max/255"""
        spec = QuantSpec(bits=8, y_max=3.0)
        assert spec.levels == 255
        assert spec.step == pytest.approx(3.0 / 255)
        assert spec.max_error == pytest.approx(3.0 / 510)

    @pytest.mark.parametrize("bits", [7, 17])
    def test_quant_spec_bits_range(self, bits):
        """位深必须位于 [8, 16]"""
        with pytest.raises(QuantizationError):
            QuantSpec(bits=bits, y_max=1.0)

    def test_quant_spec_positive_scale(self):
        """量化尺度必须为正"""
        with pytest.raises(QuantizationError):
            QuantSpec(bits=8, y_max=0.0)
