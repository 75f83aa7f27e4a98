import logging

import pytest
from typer.testing import CliRunner


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(autouse=True)
def reset_cli_logger():
    """CliRunner 结束后其输出流已关闭，移除 CLI 安装的处理器"""
    yield
    logger = logging.getLogger("bmvc")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    logger.setLevel(logging.NOTSET)
