import logging
import os
import sys
from logging.handlers import TimedRotatingFileHandler
from typing import Optional

# 全局变量，用于跟踪日志是否已初始化
_logging_initialized = False
_logging_log_name: Optional[str] = None

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - [%(suite)s] - %(message)s"


class SuiteFilter(logging.Filter):
    """为日志记录添加验证套件字段的过滤器"""

    def filter(self, record: logging.LogRecord) -> bool:
        record.suite = getattr(record, "suite", "-")
        return True


def _rotating_handler(path: str, level: int, formatter: logging.Formatter) -> TimedRotatingFileHandler:
    handler = TimedRotatingFileHandler(
        path,
        when="midnight",
        interval=1,
        backupCount=30,
        encoding="utf-8",
        delay=True,
    )
    handler.suffix = "%Y-%m-%d"
    handler.setFormatter(formatter)
    handler.addFilter(SuiteFilter())
    handler.setLevel(level)
    return handler


def setup_logging(log_name: Optional[str] = None, level: Optional[str] = None) -> logging.Logger:
    """
    通用日志系统初始化
    控制台输出到 stderr（stdout 只留给报告）；
    LOG_TO_FILE 打开时额外写 {LOG_DIR}/{log_name}.log 和 {log_name}_error.log，按天备份
    """
    global _logging_initialized, _logging_log_name

    # 延迟导入，避免循环导入问题
    from .config import get_settings

    settings = get_settings()
    log_name = log_name or settings.LOG_FILE
    log_level = (level or settings.LOG_LEVEL).upper()

    root_logger = logging.getLogger()

    if _logging_initialized:
        # 重复调用只调整级别
        for handler in root_logger.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(
                handler, TimedRotatingFileHandler
            ):
                handler.setLevel(log_level)
        return root_logger

    root_logger.setLevel(logging.DEBUG)
    formatter = logging.Formatter(LOG_FORMAT)

    # 控制台输出
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.addFilter(SuiteFilter())
    console_handler.setLevel(log_level)
    root_logger.addHandler(console_handler)

    if settings.LOG_TO_FILE:
        if not os.path.exists(settings.LOG_DIR):
            os.makedirs(settings.LOG_DIR)

        # 主日志文件
        main_log_file = os.path.join(settings.LOG_DIR, f"{log_name}.log")
        root_logger.addHandler(_rotating_handler(main_log_file, log_level, formatter))

        # 错误日志文件
        error_log_file = os.path.join(settings.LOG_DIR, f"{log_name}_error.log")
        root_logger.addHandler(_rotating_handler(error_log_file, logging.ERROR, formatter))

        root_logger.info(
            f"日志系统初始化完成，主日志文件: {main_log_file}，错误日志文件: {error_log_file}"
        )

    # 标记日志已初始化
    _logging_initialized = True
    _logging_log_name = log_name

    return root_logger
