"""解码配置

定义 PnP-GAP 解码器的配置数据类、去噪器种类和 σ 调度解析。
"""

import csv
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .exceptions import ConfigValidationError

# 默认调度：σ = [20, 10, 5]，每级 20 次迭代
DEFAULT_SCHEDULE: tuple[tuple[float, int], ...] = ((20.0, 20), (10.0, 20), (5.0, 20))

# λ = TV_WEIGHT_PER_SIGMA · σ/255
DEFAULT_TV_WEIGHT = 0.5
DEFAULT_TV_ITERATIONS = 30

_RESIDUAL_EPS = 1e-12

_SCHEDULE_ITEM = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*[xX]\s*(\d+)\s*$")


class DenoiserKind(str, Enum):
    """可插拔去噪器种类"""

    TV = "tv"
    NLM = "nlm"
    IDENTITY = "identity"


def parse_schedule(text: str) -> tuple[tuple[float, int], ...]:
    """解析形如 "20x20,10x20,5x20" 的 σ 调度字符串

    Args:
        text: 逗号分隔的 "σxN" 列表

    Returns:
        (σ, 迭代次数) 元组

    Raises:
        ConfigValidationError: 字符串格式无效

    Examples:
        >>> parse_schedule("20x20,10x20,5x20")
        ((20.0, 20), (10.0, 20), (5.0, 20))
    """
    items = [part for part in text.split(",") if part.strip()]
    if not items:
        raise ConfigValidationError("σ 调度不能为空", {"schedule": text})
    schedule = []
    for item in items:
        match = _SCHEDULE_ITEM.match(item)
        if match is None:
            raise ConfigValidationError("无法解析 σ 调度项", {"item": item})
        schedule.append((float(match.group(1)), int(match.group(2))))
    return tuple(schedule)


def format_schedule(schedule: tuple[tuple[float, int], ...]) -> str:
    return ",".join(f"{sigma:g}x{count}" for sigma, count in schedule)


@dataclass(frozen=True)
class DecodeConfig:
    """PnP-GAP 解码配置

    Attributes:
        sigma_schedule: (σ, 迭代次数) 序列，σ 采用 0–255 强度单位
        denoiser: 去噪器种类
        tv_weight: TV 去噪的 σ→λ 系数，λ = tv_weight · σ/255
        tv_iterations: 每次 TV 去噪的对偶迭代次数
        final_projection: 是否在输出前把最后一次去噪结果投影到测量一致集合

    Examples:
        >>> cfg = DecodeConfig()
        >>> cfg.iterations
        60
    """

    sigma_schedule: tuple[tuple[float, int], ...] = DEFAULT_SCHEDULE
    denoiser: DenoiserKind = DenoiserKind.TV
    tv_weight: float = DEFAULT_TV_WEIGHT
    tv_iterations: int = DEFAULT_TV_ITERATIONS
    final_projection: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "sigma_schedule",
            tuple((float(s), int(n)) for s, n in self.sigma_schedule),
        )
        object.__setattr__(self, "denoiser", DenoiserKind(self.denoiser))
        self._validate()

    def _validate(self) -> None:
        if not self.sigma_schedule:
            raise ConfigValidationError("σ 调度不能为空")
        for sigma, count in self.sigma_schedule:
            if not sigma > 0:
                raise ConfigValidationError("σ 必须为正数", {"sigma": sigma})
            if count < 1:
                raise ConfigValidationError("每级迭代次数必须至少为 1", {"count": count})
        if not self.tv_weight > 0:
            raise ConfigValidationError("tv_weight 必须为正数", {"tv_weight": self.tv_weight})
        if self.tv_iterations < 1:
            raise ConfigValidationError(
                "tv_iterations 必须至少为 1", {"tv_iterations": self.tv_iterations}
            )

    @property
    def iterations(self) -> int:
        """总迭代次数 n_iter = 各级迭代次数之和"""
        return sum(count for _, count in self.sigma_schedule)

    def sigmas(self) -> list[float]:
        """逐次迭代展开的 σ 序列"""
        return [sigma for sigma, count in self.sigma_schedule for _ in range(count)]

    def with_total_iterations(self, total: int) -> "DecodeConfig":
        """保持 σ 级别不变，把总迭代次数均分到各级

        余数分配给靠前的级别，分到 0 次的级别被丢弃。
        """
        if total < 1:
            raise ConfigValidationError("总迭代次数必须至少为 1", {"iterations": total})
        levels = [sigma for sigma, _ in self.sigma_schedule]
        base, extra = divmod(total, len(levels))
        schedule = tuple(
            (sigma, base + (1 if i < extra else 0))
            for i, sigma in enumerate(levels)
            if base + (1 if i < extra else 0) > 0
        )
        return self.replace(sigma_schedule=schedule)

    def replace(self, **changes: object) -> "DecodeConfig":
        data = self.to_dict()
        data.update(changes)
        return DecodeConfig.from_dict(data)

    def to_dict(self) -> dict[str, object]:
        """将配置转换为字典"""
        return {
            "sigma_schedule": [list(item) for item in self.sigma_schedule],
            "denoiser": self.denoiser.value,
            "tv_weight": self.tv_weight,
            "tv_iterations": self.tv_iterations,
            "final_projection": self.final_projection,
        }

    @classmethod
    def from_dict(cls, data: dict[str, object]) -> "DecodeConfig":
        """从字典创建配置对象，调度可以是字符串或 (σ, N) 列表"""
        data = dict(data)
        schedule = data.get("sigma_schedule", DEFAULT_SCHEDULE)
        if isinstance(schedule, str):
            schedule = parse_schedule(schedule)
        try:
            data["sigma_schedule"] = tuple((float(s), int(n)) for s, n in schedule)  # type: ignore[union-attr]
            data["denoiser"] = DenoiserKind(data.get("denoiser", DenoiserKind.TV))
            return cls(**data)  # type: ignore[arg-type]
        except (TypeError, ValueError) as e:
            raise ConfigValidationError(f"解码配置无效: {e}") from e


@dataclass(frozen=True)
class IterationRecord:
    """单次迭代的轨迹记录

    Attributes:
        iteration: 迭代序号（从 1 开始）
        sigma: 本次迭代使用的去噪强度
        residual: 去噪后 ‖y − Φv‖₂
        projection_residual: 投影后 ‖y − Φx‖∞
        psnr: 给定参考图像时的 PSNR
    """

    iteration: int
    sigma: float
    residual: float
    projection_residual: float
    psnr: float | None = None


@dataclass
class DecodeTrace:
    """解码轨迹"""

    records: list[IterationRecord] = field(default_factory=list)

    def append(self, record: IterationRecord) -> None:
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def residual_growth(self) -> float:
        """最终残差与历史最小残差之比；大于 1 说明残差在增长（未收敛）"""
        if not self.records:
            return 1.0
        floor = min(r.residual for r in self.records)
        last = self.records[-1].residual
        # 低于舍入噪声的残差视为零
        if last <= _RESIDUAL_EPS:
            return 1.0
        return last / max(floor, _RESIDUAL_EPS)

    def schedule(self) -> tuple[tuple[float, int], ...]:
        """从轨迹还原 (σ, 次数) 调度"""
        runs: list[list[float | int]] = []
        for record in self.records:
            if runs and runs[-1][0] == record.sigma:
                runs[-1][1] = int(runs[-1][1]) + 1
            else:
                runs.append([record.sigma, 1])
        return tuple((float(s), int(n)) for s, n in runs)

    def to_csv(self, path: Path) -> None:
        """导出 CSV：iteration, sigma, residual, projection_residual, psnr"""
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["iteration", "sigma", "residual", "projection_residual", "psnr"])
            for r in self.records:
                writer.writerow(
                    [
                        r.iteration,
                        f"{r.sigma:g}",
                        f"{r.residual:.10g}",
                        f"{r.projection_residual:.10g}",
                        "" if r.psnr is None else f"{r.psnr:.4f}",
                    ]
                )
