"""
分块压缩感知基线的单元测试
"""

import logging

import numpy as np
import pytest
from scipy.linalg import qr

from bmvc.baselines import (
    BLOCK_PIXELS,
    BlockCsOperator,
    block_cs_decode,
    block_cs_encode,
    measurements_for_ratio,
    sensing_matrix,
)
from bmvc.baselines import block_cs as block_cs_module
from bmvc.core import BlockGeometry, DecodeConfig, Frame, GeometryError
from bmvc.mask import build_lut, key_mask


def operator_from_matrix(matrix: np.ndarray, height: int = 24, width: int = 24) -> BlockCsOperator:
    q, r = qr(matrix.T.astype(np.float64), mode="economic")
    return BlockCsOperator(
        geometry=BlockGeometry(height, width, 24, 24),
        matrix=matrix,
        seed=0,
        requested_seed=0,
        _q=q,
        _r=r,
    )


class TestSensingMatrix:
    """测试感知矩阵"""

    @pytest.mark.parametrize("ratio, expected", [(1, 576), (4, 144), (16, 36), (24, 24), (1000, 1)])
    def test_measurements_for_ratio(self, ratio, expected):
        """M = ⌊576/Cr + ½⌋"""
        assert measurements_for_ratio(ratio) == expected

    def test_deterministic_binary(self):
        """同一种子得到相同的二值矩阵"""
        a = sensing_matrix(36, 5)
        assert a.shape == (36, BLOCK_PIXELS)
        assert set(np.unique(a)) <= {0, 1}
        assert np.array_equal(a, sensing_matrix(36, 5))

    def test_create_keeps_seed_when_well_conditioned(self):
        """条件良好时不重采样"""
        op = BlockCsOperator.create(48, 24, 36, 42)
        assert op.seed == op.requested_seed == 42
        assert op.measurement_shape == (2, 36)
        assert op.compression_ratio == 16.0

    def test_singular_matrix_resamples(self, mocker, caplog):
        """AAᵀ 奇异时换用下一个种子并给出警告"""
        real = block_cs_module.sensing_matrix

        def fake(measurements, seed):
            if seed == 10:
                return np.zeros((measurements, BLOCK_PIXELS), dtype=np.uint8)
            return real(measurements, seed)

        mocker.patch.object(block_cs_module, "sensing_matrix", side_effect=fake)
        with caplog.at_level(logging.WARNING, logger="bmvc.baselines.block_cs"):
            op = BlockCsOperator.create(24, 24, 16, 10)
        assert op.seed == 11
        assert op.requested_seed == 10
        assert "重采样" in caplog.text

    def test_rejects_non_multiple_of_24(self):
        """帧尺寸必须是 24 的倍数"""
        with pytest.raises(GeometryError):
            BlockCsOperator.create(30, 24, 16, 1)


class TestBlockCsEncode:
    """测试 block_cs_encode"""

    def test_zero_frame(self):
        """零帧得到零测量"""
        op = BlockCsOperator.create(24, 48, 16, 3)
        assert np.all(block_cs_encode(Frame(np.zeros((24, 48))), op).values == 0)

    def test_selection_matrix(self, rng):
        """每行一个 1 时测量即被选中的像素"""
        picks = np.array([0, 5, 100, 575])
        matrix = np.zeros((4, BLOCK_PIXELS), dtype=np.uint8)
        matrix[np.arange(4), picks] = 1
        op = operator_from_matrix(matrix)
        frame = rng.random((24, 24))
        y = block_cs_encode(Frame(frame), op).values
        assert np.array_equal(y[0], frame.ravel()[picks])

    def test_matches_dense_product(self, rng):
        """逐块结果与稠密矩阵乘法一致"""
        op = BlockCsOperator.create(48, 48, 30, 8)
        frame = rng.random((48, 48))
        y = block_cs_encode(Frame(frame), op).values
        blocks = BlockGeometry(48, 48, 24, 24).to_blocks(frame)
        for b in range(4):
            assert np.allclose(y[b], op.matrix.astype(float) @ blocks[b], atol=1e-12)

    def test_dynamic_range(self, rng):
        """测量值不超过最大行和，且远高于同 Cr 下 BMVC 的尺度"""
        op = BlockCsOperator.for_ratio(48, 48, 16, 2)
        y = block_cs_encode(Frame(rng.random((48, 48))), op).values
        assert y.max() <= op.y_max
        geom = BlockGeometry(48, 48, 12, 12)
        bmvc_lut = build_lut(key_mask(2, geom), geom)
        assert op.y_max > bmvc_lut.y_max

    def test_additions(self):
        """加法次数为 nnz(A)·块数"""
        op = BlockCsOperator.create(48, 24, 10, 4)
        assert op.additions == int(op.matrix.sum()) * 2


class TestBlockCsDecode:
    """测试 block_cs_decode"""

    def test_full_measurement_is_exact(self, rng):
        """M=576 时精确恢复"""
        op = BlockCsOperator.create(24, 24, 576, 1)
        frame = rng.random((24, 24))
        y = block_cs_encode(Frame(frame), op)
        result = block_cs_decode(y, op, DecodeConfig().with_total_iterations(3))
        assert np.allclose(result.frame.data, frame, atol=1e-8)

    def test_identity_projection(self, rng):
        """恒等去噪器下每块满足 A·x = y"""
        op = BlockCsOperator.create(48, 48, 36, 6)
        y = block_cs_encode(Frame(rng.random((48, 48))), op).values
        cfg = DecodeConfig(denoiser="identity", sigma_schedule=((10.0, 1),), final_projection=False)
        result = block_cs_decode(y, op, cfg)
        assert all(r.projection_residual <= 1e-8 for r in result.trace)

    def test_projection_is_min_norm_correction(self, rng):
        """投影修正量与 Aᵀ(AAᵀ)⁻¹ 的稠密计算一致"""
        op = BlockCsOperator.create(24, 24, 20, 9)
        a = op.matrix.astype(float)
        v = rng.random((24, 24))
        y = rng.random((1, 20))
        expected = v.ravel() + a.T @ np.linalg.solve(a @ a.T, y[0] - a @ v.ravel())
        assert np.allclose(op.project(v, y).ravel(), expected, atol=1e-8)

    def test_shape_mismatch(self):
        """测量尺寸不匹配时报错"""
        op = BlockCsOperator.create(24, 24, 16, 1)
        with pytest.raises(GeometryError):
            block_cs_decode(np.zeros((1, 15)), op)
