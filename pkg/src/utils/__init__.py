"""工具模块.

包含日志记录等实用工具函数。
"""

import logging
import sys
from pathlib import Path

ROOT_LOGGER = "pg-justify"


def setup_logging(
    level: int | str = logging.INFO,
    log_file: str | None = None,
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
) -> logging.Logger:
    """设置日志记录.

    Args:
        level: 日志级别，可以是数字或名称（如 "DEBUG"）
        log_file: 日志文件路径，如果为None则输出到stderr
        log_format: 日志格式

    Returns
    -------
        配置好的日志记录器
    """
    if isinstance(level, str):
        level = logging.getLevelNamesMapping().get(level.upper(), logging.INFO)

    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(level)

    # 清除现有的处理器
    logger.handlers.clear()

    formatter = logging.Formatter(log_format)

    # ! stdout 留给命令结果（解、DOT、审计摘要），日志只写 stderr 或文件
    handler: logging.Handler
    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(log_file, encoding="utf-8")
    else:
        handler = logging.StreamHandler(sys.stderr)

    handler.setLevel(level)
    handler.setFormatter(formatter)
    logger.addHandler(handler)

    return logger


def get_logger(name: str = ROOT_LOGGER) -> logging.Logger:
    """获取日志记录器.

    Args:
        name: 日志记录器名称，挂在包根日志记录器之下

    Returns
    -------
        日志记录器
    """
    if name == ROOT_LOGGER:
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")
