"""
去噪器协议、工厂和 NLM 去噪器的单元测试
"""

import numpy as np
import pytest

from bmvc.core import ConfigValidationError, DecodeConfig, DenoiserKind, Frame
from bmvc.denoiser import (
    DenoiseStrength,
    IdentityDenoiser,
    NlmDenoiser,
    TvDenoiser,
    create_denoiser,
    denoise,
    denoiser_for,
)


class TestDenoiseStrength:
    """测试 DenoiseStrength"""

    def test_unit(self):
        """σ/255 换算"""
        assert DenoiseStrength(51.0).unit == pytest.approx(0.2)

    @pytest.mark.parametrize("sigma", [0.0, -1.0, float("nan")])
    def test_rejects_non_positive(self, sigma):
        """σ 必须为正数"""
        with pytest.raises(ConfigValidationError):
            DenoiseStrength(sigma)


class TestFactory:
    """测试 create_denoiser 与 denoiser_for"""

    @pytest.mark.parametrize(
        "kind, cls",
        [("tv", TvDenoiser), ("nlm", NlmDenoiser), ("identity", IdentityDenoiser)],
    )
    def test_create_by_name(self, kind, cls):
        """按名字创建对应去噪器"""
        denoiser = create_denoiser(kind)
        assert isinstance(denoiser, cls)
        assert denoiser.kind is DenoiserKind(kind)

    def test_unknown_kind(self):
        """未知种类被拒绝"""
        with pytest.raises(ConfigValidationError):
            create_denoiser("ffdnet")

    def test_from_config(self):
        """配置中的 TV 参数被传入去噪器"""
        denoiser = denoiser_for(DecodeConfig(tv_weight=0.7, tv_iterations=9))
        assert isinstance(denoiser, TvDenoiser)
        assert denoiser.weight == 0.7
        assert denoiser.iterations == 9


class TestDenoisers:
    """测试各去噪器的行为"""

    def test_identity_returns_copy(self):
        """恒等去噪器返回副本"""
        x = np.arange(6, dtype=float).reshape(2, 3)
        out = IdentityDenoiser()(x, DenoiseStrength(10.0))
        assert np.array_equal(out, x)
        assert out is not x

    def test_denoise_frame(self):
        """denoise 接受并返回 Frame"""
        frame = Frame(np.full((8, 8), 0.4))
        out = denoise(frame, DenoiseStrength(20.0), "tv")
        assert isinstance(out, Frame)
        assert np.allclose(out.data, 0.4, atol=1e-10)

    def test_nlm_constant_unchanged(self):
        """常值帧经 NLM 后不变"""
        x = np.full((20, 20), 0.6)
        assert np.allclose(NlmDenoiser()(x, DenoiseStrength(20.0)), x, atol=1e-10)

    def test_nlm_reduces_noise(self, smooth_image, rng):
        """NLM 降低噪声图像的误差"""
        noisy = smooth_image + rng.normal(0.0, 20.0 / 255, size=smooth_image.shape)
        out = NlmDenoiser()(noisy, DenoiseStrength(20.0))
        assert np.mean((out - smooth_image) ** 2) < np.mean((noisy - smooth_image) ** 2)

    def test_tv_reduces_noise(self, smooth_image, rng):
        """TV 降低噪声图像的误差"""
        noisy = smooth_image + rng.normal(0.0, 20.0 / 255, size=smooth_image.shape)
        out = TvDenoiser()(noisy, DenoiseStrength(20.0))
        assert np.mean((out - smooth_image) ** 2) < np.mean((noisy - smooth_image) ** 2)
