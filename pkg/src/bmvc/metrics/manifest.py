"""运行清单

记录复现一次编码/基准运行所需的全部信息：种子、设置、依赖版本和输入文件的 MD5。
"""

import hashlib
import platform
from dataclasses import asdict, dataclass, field
from datetime import datetime
from importlib import metadata
from pathlib import Path

import humanize
import yaml

from ..core.exceptions import ConfigValidationError

TRACKED_PACKAGES = ("bmvc", "numpy", "scipy", "scikit-image", "matplotlib", "pyyaml", "typer")

_CHUNK_SIZE = 8 * 1024 * 1024


def file_md5(path: Path) -> str:
    """分块计算文件的 MD5"""
    digest = hashlib.md5()
    with open(path, "rb") as f:
        while chunk := f.read(_CHUNK_SIZE):
            digest.update(chunk)
    return digest.hexdigest()


def package_versions(names: tuple[str, ...] = TRACKED_PACKAGES) -> dict[str, str]:
    versions = {}
    for name in names:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "unknown"
    return versions


@dataclass
class InputRecord:
    """清单中的输入文件条目"""

    path: str
    md5: str
    size: str

    @classmethod
    def from_path(cls, path: Path) -> "InputRecord":
        return cls(
            path=str(path),
            md5=file_md5(path),
            size=humanize.naturalsize(path.stat().st_size),
        )


@dataclass
class RunManifest:
    """运行清单

    Attributes:
        command: 产生该清单的命令名
        seeds: 使用到的种子（包括 Block CS 重采样后的最终种子）
        settings: 运行设置
        inputs: 输入文件记录
        versions: 依赖版本
        python: Python 版本
        created_at: ISO 格式时间戳
    """

    command: str
    seeds: dict[str, int] = field(default_factory=dict)
    settings: dict[str, object] = field(default_factory=dict)
    inputs: list[InputRecord] = field(default_factory=list)
    versions: dict[str, str] = field(default_factory=package_versions)
    python: str = field(default_factory=platform.python_version)
    created_at: str = field(default_factory=lambda: datetime.now().isoformat(timespec="seconds"))

    def add_input(self, path: Path) -> None:
        self.inputs.append(InputRecord.from_path(path))

    def to_dict(self) -> dict[str, object]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, object]) -> "RunManifest":
        try:
            inputs = [InputRecord(**item) for item in data.get("inputs", [])]  # type: ignore[union-attr]
            return cls(**{**data, "inputs": inputs})  # type: ignore[arg-type]
        except TypeError as e:
            raise ConfigValidationError(f"清单格式无效: {e}") from e

    def save(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(self.to_dict(), f, allow_unicode=True, sort_keys=False)
        return path

    @classmethod
    def load(cls, path: Path) -> "RunManifest":
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ConfigValidationError("清单必须是 YAML 映射", {"path": str(path)})
        return cls.from_dict(data)
