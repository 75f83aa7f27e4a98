"""
命令注册表的单元测试
"""

import pytest
import typer

from bmvc.cli import get_registry, register_command, register_with_typer
from bmvc.cli import registry as registry_module


class TestRegistry:
    """测试命令注册"""

    def test_builtin_commands(self):
        """四个内置命令均已注册"""
        names = [name for name, _ in get_registry()]
        assert names == ["encode", "decode", "bench", "mask"]

    def test_duplicate_name(self):
        """重复的命令名被拒绝"""
        with pytest.raises(ValueError):
            register_command("encode")(lambda: None)

    def test_register_with_typer(self, mocker):
        """注册到新的 typer 应用"""
        mocker.patch.object(registry_module, "_registered_commands", [])

        @register_command("hello")
        def hello() -> None:
            """打招呼"""

        app = typer.Typer()
        register_with_typer(app)
        assert [c.name for c in app.registered_commands] == ["hello"]
