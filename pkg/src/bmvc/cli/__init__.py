"""CLI 模块

`bmvc encode | decode | bench | mask`
"""

from .app import app, main
from .registry import get_registry, register_command, register_with_typer

__all__ = ["app", "main", "register_command", "register_with_typer", "get_registry"]
