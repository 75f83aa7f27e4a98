"""
TV 去噪器的单元测试

与一份独立编写的投影梯度对偶求解器对照目标函数值。
"""

import numpy as np
import pytest

from bmvc.core import ConfigValidationError
from bmvc.denoiser import (
    DenoiseStrength,
    TvDenoiser,
    anisotropic_tv,
    divergence,
    gradient,
    tv_denoise,
    tv_objective,
)


def reference_tv_solver(x: np.ndarray, weight: float, iterations: int = 50_000) -> np.ndarray:
    """无动量的对偶投影梯度，独立实现差分算子"""
    h, w = x.shape
    ph = np.zeros((h, w - 1))
    pv = np.zeros((h - 1, w))

    def div(ph, pv):
        out = np.zeros((h, w))
        out[:, :-1] += ph
        out[:, 1:] -= ph
        out[:-1, :] += pv
        out[1:, :] -= pv
        return out

    step = 1.0 / (8.0 * weight)
    for _ in range(iterations):
        u = x + weight * div(ph, pv)
        ph = np.clip(ph + step * (u[:, 1:] - u[:, :-1]), -1.0, 1.0)
        pv = np.clip(pv + step * (u[1:, :] - u[:-1, :]), -1.0, 1.0)
    return x + weight * div(ph, pv)


@pytest.fixture
def noisy_ramp(rng):
    yy, xx = np.mgrid[0:16, 0:16] / 16.0
    clean = 0.2 + 0.5 * xx
    clean[4:12, 6:10] = 0.9
    return clean + rng.normal(0.0, 0.08, size=clean.shape)


class TestDifferenceOperators:
    """测试梯度与散度"""

    def test_divergence_is_negative_adjoint(self, rng):
        """⟨∇u, p⟩ = −⟨u, div p⟩"""
        u = rng.standard_normal((7, 9))
        ph, pv = rng.standard_normal((7, 9)), rng.standard_normal((7, 9))
        gh, gv = gradient(u)
        lhs = np.vdot(gh, ph) + np.vdot(gv, pv)
        assert lhs == pytest.approx(-np.vdot(u, divergence(ph, pv)), abs=1e-10)

    def test_neumann_boundary(self):
        """最后一行/列的前向差分为 0"""
        gh, gv = gradient(np.arange(12, dtype=float).reshape(3, 4))
        assert np.all(gh[:, -1] == 0)
        assert np.all(gv[-1, :] == 0)
        assert np.all(gh[:, :-1] == 1)

    def test_anisotropic_tv(self):
        """阶跃图像的 TV 等于跳变幅度乘以边长"""
        u = np.zeros((4, 4))
        u[:, 2:] = 1.0
        assert anisotropic_tv(u) == pytest.approx(4.0)


class TestTvDenoise:
    """测试 tv_denoise"""

    def test_constant_unchanged(self):
        """常值帧保持不变"""
        x = np.full((10, 12), 0.37)
        assert np.allclose(tv_denoise(x, 0.3), x, atol=1e-10)

    def test_tiny_weight_is_identity(self, noisy_ramp):
        """λ → 0 时输出趋于输入"""
        out = tv_denoise(noisy_ramp, 1e-9)
        assert np.max(np.abs(out - noisy_ramp)) <= 1e-6

    def test_mean_preserved(self, noisy_ramp):
        """Neumann 边界下均值守恒"""
        assert tv_denoise(noisy_ramp, 0.1).mean() == pytest.approx(noisy_ramp.mean(), abs=1e-12)

    def test_objective_decreases(self, noisy_ramp):
        """输出处的目标函数不高于输入处"""
        for weight in (0.01, 0.05, 0.2):
            out = tv_denoise(noisy_ramp, weight)
            assert tv_objective(out, noisy_ramp, weight) <= tv_objective(noisy_ramp, noisy_ramp, weight)
            assert anisotropic_tv(out) < anisotropic_tv(noisy_ramp)

    def test_larger_weight_smooths_more(self, noisy_ramp):
        """λ 越大，输出 TV 越小"""
        tvs = [anisotropic_tv(tv_denoise(noisy_ramp, w, iterations=300)) for w in (0.01, 0.05, 0.2)]
        assert tvs[0] > tvs[1] > tvs[2]

    def test_matches_reference_solver(self, noisy_ramp):
        """充分迭代后与独立求解器的目标函数值相差不超过 1e-3"""
        weight = 0.02
        ours = tv_objective(tv_denoise(noisy_ramp, weight, iterations=300), noisy_ramp, weight)
        reference = tv_objective(reference_tv_solver(noisy_ramp, weight), noisy_ramp, weight)
        assert ours == pytest.approx(reference, abs=1e-3)

    def test_default_iterations_close_to_reference(self, noisy_ramp):
        """默认 30 次迭代已接近最优"""
        weight = 0.02
        ours = tv_objective(tv_denoise(noisy_ramp, weight), noisy_ramp, weight)
        reference = tv_objective(reference_tv_solver(noisy_ramp, weight), noisy_ramp, weight)
        assert ours <= reference * 1.05

    @pytest.mark.parametrize("weight, iterations", [(0.0, 30), (-1.0, 30), (0.1, 0)])
    def test_rejects_bad_parameters(self, weight, iterations):
        """非正权重与零迭代被拒绝"""
        with pytest.raises(ConfigValidationError):
            tv_denoise(np.zeros((4, 4)), weight, iterations)


class TestTvDenoiser:
    """测试 TvDenoiser"""

    def test_sigma_to_weight(self):
        """λ = 0.5 · σ/255"""
        denoiser = TvDenoiser()
        assert denoiser.strength_to_weight(DenoiseStrength(25.5)) == pytest.approx(0.05)

    def test_call_matches_function(self, noisy_ramp):
        """调用等价于 tv_denoise"""
        denoiser = TvDenoiser(weight=1.0, iterations=12)
        out = denoiser(noisy_ramp, DenoiseStrength(10.0))
        assert np.array_equal(out, tv_denoise(noisy_ramp, 10.0 / 255, 12))
