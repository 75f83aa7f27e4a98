"""
PnP-GAP 解码器的单元测试
"""

import logging

import numpy as np
import pytest

from bmvc.bench import synthetic_test_set
from bmvc.core import (
    BlockGeometry,
    DecodeConfig,
    DegenerateMaskError,
    Frame,
    GeometryError,
    MaskPlane,
)
from bmvc.decoder import decode
from bmvc.denoiser import IdentityDenoiser
from bmvc.mask import build_lut, generate_mask, key_mask
from bmvc.metrics import psnr
from bmvc.operator import BmvcOperator


def operator_for(geom: BlockGeometry, seed: int = 42) -> BmvcOperator:
    return BmvcOperator.from_lut(build_lut(key_mask(seed, geom), geom))


def covered_operator(geom: BlockGeometry) -> BmvcOperator:
    """第一个块全 1，保证所有 r_i > 0"""
    bits = generate_mask(42, *geom.frame_shape).bits.copy()
    bits[: geom.block_height, : geom.block_width] = 1
    return BmvcOperator.from_lut(build_lut(MaskPlane(bits, seed=42), geom))


class DriftingDenoiser:
    """每次调用都额外偏移一点的去噪器，用于制造不收敛"""

    kind = "drifting"

    def __init__(self) -> None:
        self.calls = 0

    def __call__(self, x, strength):
        self.calls += 1
        return x + 0.01 * self.calls


class TestDecode:
    """测试 decode"""

    def test_single_block_is_exact(self, smooth_image):
        """Cr=1 时精确恢复"""
        op = operator_for(BlockGeometry(64, 64, 64, 64))
        y = op.forward(smooth_image)
        result = decode(y, op, DecodeConfig().with_total_iterations(3))
        assert np.allclose(result.frame.data, smooth_image, atol=1e-12)

    def test_identity_denoiser_fixed_point(self, rng):
        """恒等去噪器：第一次迭代后 Φx = y 且迭代不再变化"""
        geom = BlockGeometry(16, 16, 4, 4)
        op = covered_operator(geom)
        y = op.forward(rng.random((16, 16)))
        cfg = DecodeConfig(denoiser="identity", sigma_schedule=((10.0, 5),))
        result = decode(y, op, cfg)
        assert all(r.residual <= 1e-10 for r in result.trace)
        assert all(r.projection_residual <= 1e-10 for r in result.trace)
        once = decode(y, op, cfg.with_total_iterations(1))
        assert np.allclose(once.frame.data, result.frame.data, atol=1e-12)

    def test_improves_on_initialization(self, smooth_image):
        """Cr=4、TV、60 次迭代比初始反投影至少高 5 dB"""
        geom = BlockGeometry(64, 64, 32, 32)
        op = operator_for(geom)
        y = op.forward(smooth_image)
        initial = np.clip(op.initial(y), 0.0, 1.0)
        result = decode(y, op)
        assert psnr(smooth_image, result.frame) >= psnr(smooth_image, initial) + 5.0

    def test_deterministic(self, smooth_image):
        """相同输入得到逐位一致的输出"""
        op = operator_for(BlockGeometry(64, 64, 16, 16))
        y = op.forward(smooth_image)
        cfg = DecodeConfig().with_total_iterations(6)
        a = decode(y, op, cfg).frame.data
        b = decode(y, op, cfg).frame.data
        assert np.array_equal(a, b)

    def test_output_clipped(self, rng):
        """输出截断到 [0, 1]"""
        op = operator_for(BlockGeometry(16, 16, 8, 8))
        y = op.forward(rng.random((16, 16)))
        frame = decode(y, op, DecodeConfig().with_total_iterations(3)).frame
        assert frame.data.min() >= 0.0
        assert frame.data.max() <= 1.0

    def test_schedule_is_followed(self, rng, mocker):
        """去噪器按调度的 σ 序列被调用"""
        spy = mocker.spy(IdentityDenoiser, "__call__")
        op = operator_for(BlockGeometry(8, 8, 4, 4))
        y = op.forward(rng.random((8, 8)))
        cfg = DecodeConfig(denoiser="identity", sigma_schedule=((20.0, 2), (10.0, 3), (5.0, 1)))
        result = decode(y, op, cfg)
        sigmas = [call.args[-1].sigma for call in spy.call_args_list]
        assert sigmas == [20.0, 20.0, 10.0, 10.0, 10.0, 5.0]
        assert result.trace.schedule() == cfg.sigma_schedule

    def test_default_schedule_trace(self, rng):
        """默认调度的轨迹有 60 条记录"""
        op = operator_for(BlockGeometry(8, 8, 4, 4))
        y = op.forward(rng.random((8, 8)))
        result = decode(y, op, DecodeConfig(denoiser="identity"))
        assert len(result.trace) == 60
        assert result.trace.schedule() == ((20.0, 20), (10.0, 20), (5.0, 20))

    def test_reference_psnr_in_trace(self, smooth_image, tmp_path):
        """给出参考帧时轨迹记录 PSNR 并可导出"""
        op = operator_for(BlockGeometry(64, 64, 32, 32))
        y = op.forward(smooth_image)
        cfg = DecodeConfig().with_total_iterations(4)
        result = decode(y, op, cfg, reference=Frame(smooth_image))
        assert all(r.psnr is not None for r in result.trace)
        path = tmp_path / "trace.csv"
        result.trace.to_csv(path)
        assert len(path.read_text(encoding="utf-8").splitlines()) == 5

    def test_custom_init(self, rng):
        """可以给出初始估计"""
        op = operator_for(BlockGeometry(8, 8, 4, 4))
        y = op.forward(rng.random((8, 8)))
        result = decode(y, op, DecodeConfig(denoiser="identity", sigma_schedule=((5.0, 1),)),
                        init=Frame(np.full((8, 8), 0.5)))
        assert result.frame.shape == (8, 8)
        with pytest.raises(GeometryError):
            decode(y, op, init=Frame(np.zeros((4, 4))))

    def test_degenerate_mask(self):
        """全 0 掩码无法解码"""
        geom = BlockGeometry(4, 4, 2, 2)
        op = BmvcOperator.from_lut(build_lut(MaskPlane(np.zeros((4, 4)), seed=0), geom))
        with pytest.raises(DegenerateMaskError):
            decode(np.zeros((2, 2)), op)

    def test_measurement_shape_mismatch(self):
        """测量尺寸不匹配时报错"""
        op = operator_for(BlockGeometry(8, 8, 4, 4))
        with pytest.raises(GeometryError):
            decode(np.zeros((2, 2)), op)

    def test_residual_growth_is_reported(self, rng, caplog):
        """残差增长时给出警告且标记未收敛"""
        op = covered_operator(BlockGeometry(8, 8, 4, 4))
        y = op.forward(rng.random((8, 8)))
        cfg = DecodeConfig(sigma_schedule=((10.0, 20),), final_projection=False)
        with caplog.at_level(logging.WARNING, logger="bmvc.decoder.pnp"):
            result = decode(y, op, cfg, denoiser=DriftingDenoiser())
        assert not result.converged
        assert result.trace.residual_growth > 2.0
        assert "残差增长" in caplog.text

    def test_projection_identity_over_full_decode(self):
        """Cr=4 的 60 次迭代中每次投影后 ‖y − Φx‖∞ ≤ 1e-8·y_max"""
        geom = BlockGeometry(64, 64, 32, 32)
        op = operator_for(geom)
        y_max = op.lut.y_max
        for _, image in synthetic_test_set(count=5, size=64, seed=3):
            y = op.forward(image)
            trace = decode(y, op).trace
            assert len(trace) == 60
            assert max(r.projection_residual for r in trace) <= 1e-8 * y_max
