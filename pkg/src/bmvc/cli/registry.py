"""命令注册表

命令模块用 `register_command` 装饰函数，应用启动时由 `register_with_typer`
统一挂到 Typer 应用上。
"""

import typing as t

import typer

_Registry = tuple[str, t.Callable[..., None]]
_registered_commands: list[_Registry] = []


def register_command(name: str) -> t.Callable[[t.Callable[..., None]], t.Callable[..., None]]:
    def decorator(fn: t.Callable[..., None]) -> t.Callable[..., None]:
        if any(existing == name for existing, _ in _registered_commands):
            raise ValueError(f"命令已注册: {name}")
        _registered_commands.append((name, fn))
        return fn

    return decorator


def get_registry() -> list[_Registry]:
    return _registered_commands.copy()


def register_with_typer(app: typer.Typer) -> None:
    for name, func in get_registry():
        app.command(name)(func)
