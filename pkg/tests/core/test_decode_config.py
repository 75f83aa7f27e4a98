"""
解码配置与轨迹的单元测试
"""

import csv

import pytest

from bmvc.core import (
    DEFAULT_SCHEDULE,
    BmvcError,
    ConfigValidationError,
    DecodeConfig,
    DecodeTrace,
    DenoiserKind,
    GeometryError,
    IterationRecord,
    format_schedule,
    parse_schedule,
)


class TestSchedule:
    """测试 σ 调度解析"""

    def test_parse_default(self):
        """默认调度字符串解析为三级"""
        assert parse_schedule("20x20,10x20,5x20") == DEFAULT_SCHEDULE

    def test_parse_tolerates_spaces_and_decimals(self):
        """允许空白与小数 σ"""
        assert parse_schedule(" 12.5 X 3 , 4x1") == ((12.5, 3), (4.0, 1))

    @pytest.mark.parametrize("text", ["", "20", "ax3", "20x", "20x20;10x20"])
    def test_parse_rejects_malformed(self, text):
        """格式无效时抛出 ConfigValidationError"""
        with pytest.raises(ConfigValidationError):
            parse_schedule(text)

    def test_format_round_trip(self):
        """格式化后可以再次解析"""
        assert parse_schedule(format_schedule(DEFAULT_SCHEDULE)) == DEFAULT_SCHEDULE


class TestDecodeConfig:
    """测试 DecodeConfig"""

    def test_defaults(self):
        """默认 60 次迭代、TV 去噪、开启最终投影"""
        cfg = DecodeConfig()
        assert cfg.iterations == 60
        assert cfg.denoiser is DenoiserKind.TV
        assert cfg.final_projection is True
        assert cfg.sigmas()[:2] == [20.0, 20.0]
        assert cfg.sigmas()[-1] == 5.0

    def test_rejects_bad_values(self):
        """非正 σ、零次迭代和非正权重被拒绝"""
        with pytest.raises(ConfigValidationError):
            DecodeConfig(sigma_schedule=((0.0, 5),))
        with pytest.raises(ConfigValidationError):
            DecodeConfig(sigma_schedule=((5.0, 0),))
        with pytest.raises(ConfigValidationError):
            DecodeConfig(tv_weight=0.0)

    def test_unknown_denoiser(self):
        """未知去噪器种类被拒绝"""
        with pytest.raises(ConfigValidationError):
            DecodeConfig.from_dict({"denoiser": "bm3d"})

    def test_from_dict_accepts_string_schedule(self):
        """字典中的调度可以是字符串"""
        cfg = DecodeConfig.from_dict({"sigma_schedule": "8x2", "denoiser": "identity"})
        assert cfg.sigma_schedule == ((8.0, 2),)
        assert cfg.denoiser is DenoiserKind.IDENTITY

    def test_dict_round_trip(self):
        """to_dict / from_dict 往返"""
        cfg = DecodeConfig(sigma_schedule=((15.0, 3),), tv_iterations=10, final_projection=False)
        assert DecodeConfig.from_dict(cfg.to_dict()) == cfg

    @pytest.mark.parametrize(
        "total, expected",
        [
            (1, ((20.0, 1),)),
            (4, ((20.0, 2), (10.0, 1), (5.0, 1))),
            (60, DEFAULT_SCHEDULE),
        ],
    )
    def test_with_total_iterations(self, total, expected):
        """总迭代次数均分到各级，余数给靠前的级别"""
        cfg = DecodeConfig().with_total_iterations(total)
        assert cfg.sigma_schedule == expected
        assert cfg.iterations == total

    def test_with_total_iterations_rejects_zero(self):
        """总迭代次数至少为 1"""
        with pytest.raises(ConfigValidationError):
            DecodeConfig().with_total_iterations(0)


class TestDecodeTrace:
    """测试 DecodeTrace"""

    @staticmethod
    def _trace(residuals, sigmas=None):
        trace = DecodeTrace()
        sigmas = sigmas or [20.0] * len(residuals)
        for i, (res, sigma) in enumerate(zip(residuals, sigmas), start=1):
            trace.append(IterationRecord(i, sigma, res, 0.0))
        return trace

    def test_growth_of_decreasing_residual(self):
        """残差单调下降时增长比为 1"""
        assert self._trace([3.0, 2.0, 1.0]).residual_growth == pytest.approx(1.0)

    def test_growth_detects_increase(self):
        """残差回升时增长比大于 1"""
        assert self._trace([3.0, 1.0, 2.5]).residual_growth == pytest.approx(2.5)

    def test_growth_with_zero_residual(self):
        """残差为零时视为收敛"""
        assert self._trace([0.0, 0.0]).residual_growth == 1.0

    def test_schedule_recovered(self):
        """从轨迹还原调度"""
        trace = self._trace([1.0] * 5, [20.0, 20.0, 10.0, 10.0, 5.0])
        assert trace.schedule() == ((20.0, 2), (10.0, 2), (5.0, 1))

    def test_to_csv(self, tmp_path):
        """CSV 导出包含表头和每次迭代"""
        trace = self._trace([2.0, 1.0])
        path = tmp_path / "out" / "trace.csv"
        trace.to_csv(path)
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["iteration", "sigma", "residual", "projection_residual", "psnr"]
        assert len(rows) == 3
        assert rows[2][0] == "2"
        assert rows[2][4] == ""


class TestExceptions:
    """测试异常层次"""

    def test_str_with_details(self):
        """details 被渲染到消息后"""
        error = GeometryError("尺寸错误", {"h": 3, "w": 4})
        assert str(error) == "尺寸错误 (h=3, w=4)"
        assert isinstance(error, BmvcError)

    def test_str_without_details(self):
        """无 details 时只有消息"""
        assert str(BmvcError("失败")) == "失败"
