"""Typer 应用入口"""

import typer

from . import commands  # noqa: F401  注册命令
from .registry import register_with_typer

app = typer.Typer(
    name="bmvc",
    help="块调制视频压缩：编码、解码与基准测试",
    no_args_is_help=True,
)
register_with_typer(app)


def main() -> None:
    app()
