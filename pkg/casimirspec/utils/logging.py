"""Unified logging functionality using Python's logging module."""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler

from .paths import get_log_path

LOG_MAX_BYTES = 3 * 1024 * 1024  # 3 MB per file
LOG_BACKUP_COUNT = 3  # keep 3 backup files

_logger: logging.Logger | None = None
_stderr_handler: logging.Handler | None = None


def _get_logger() -> logging.Logger:
    """Get or create the singleton logger instance."""
    global _logger, _stderr_handler
    if _logger is not None:
        return _logger

    _logger = logging.getLogger("casimirspec")
    _logger.setLevel(logging.DEBUG)

    # Avoid adding duplicate handlers
    if _logger.handlers:
        return _logger

    # 进度信息只写到 stderr，保证 stdout 可以用于管道
    _stderr_handler = logging.StreamHandler(sys.stderr)
    _stderr_handler.setLevel(logging.INFO)
    _stderr_handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    _logger.addHandler(_stderr_handler)

    try:
        log_path = get_log_path()
        os.makedirs(os.path.dirname(log_path), exist_ok=True)

        # RotatingFileHandler: auto-rotate when file exceeds max size
        handler = RotatingFileHandler(
            log_path,
            maxBytes=LOG_MAX_BYTES,
            backupCount=LOG_BACKUP_COUNT,
            encoding="utf-8",
        )
        handler.setLevel(logging.DEBUG)

        # Format: [2025-12-07 10:30:00] LEVEL message
        formatter = logging.Formatter(
            "[%(asctime)s] %(levelname)s %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        handler.setFormatter(formatter)
        _logger.addHandler(handler)
    except Exception:
        # 日志目录不可写时只保留 stderr
        _logger.addHandler(logging.NullHandler())

    return _logger


def set_verbosity(level: int) -> None:
    """调整 stderr 输出级别（--verbose / --quiet）"""
    _get_logger()
    if _stderr_handler is not None:
        _stderr_handler.setLevel(level)


def log(message: str, level: int = logging.INFO) -> None:
    """记录日志到文件和 stderr"""
    try:
        _get_logger().log(level, message)
    except Exception:
        # 记录日志失败时静默处理，避免递归错误
        pass
