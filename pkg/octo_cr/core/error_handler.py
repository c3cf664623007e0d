"""
全局异常处理器
"""

import logging
import sys
from functools import wraps
from typing import Any, Callable, Dict, Optional

from fastapi import Request
from fastapi.responses import JSONResponse

from .exceptions import (
    ConfigurationError,
    DomainError,
    OctoCRError,
    PreconditionError,
    ReportError,
    ValidationError,
)

logger = logging.getLogger(__name__)

# 命令行退出码约定：0 全部通过，1 存在失败检查，2 用法/配置/IO 错误
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class ErrorHandler:
    """全局异常处理器"""

    @staticmethod
    def handle_exception(e: Exception, context: str = "", suite: Optional[str] = None) -> Dict[str, Any]:
        """
        统一异常处理

        Args:
            e: 异常对象
            context: 异常上下文
            suite: 当前验证套件

        Returns:
            错误响应字典 {code, message}
        """
        if isinstance(e, OctoCRError):
            # 已知异常只记录摘要
            logger.error(
                f"异常处理 - 上下文: {context}, 异常: {e.message}",
                extra={"suite": suite or "-", "error_code": e.error_code},
            )
        else:
            logger.error(
                f"异常处理 - 上下文: {context}, 异常: {str(e)}",
                extra={"suite": suite or "-"},
                exc_info=True,
            )

        if isinstance(e, (DomainError, ValidationError, PreconditionError, ValueError)):
            return {"code": 400, "message": f"参数错误: {e}"}

        if isinstance(e, KeyError):
            return {"code": 400, "message": f"缺少必要参数: {e}"}

        if isinstance(e, (ConfigurationError, ReportError, OSError)):
            return {"code": 500, "message": f"配置或读写错误: {e}"}

        # 默认错误处理
        return {"code": 500, "message": "系统内部错误"}


def error_handler(context: str = "") -> Callable[[Callable[..., int]], Callable[..., int]]:
    """
    命令行异常处理装饰器：异常被记录并转换为退出码 2

    Args:
        context: 异常上下文描述
    """

    def decorator(func: Callable[..., int]) -> Callable[..., int]:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> int:
            try:
                return func(*args, **kwargs)
            except Exception as e:
                result = ErrorHandler.handle_exception(e, context)

                print(f"octo-cr: {result['message']}", file=sys.stderr)
                return EXIT_USAGE

        return wrapper

    return decorator


async def http_exception_handler(request: Request, exc: Exception) -> JSONResponse:
    """
    FastAPI全局异常处理器
    """
    error_response = ErrorHandler.handle_exception(
        exc, f"HTTP请求处理 {request.url.path}", suite=request.path_params.get("suite")
    )

    return JSONResponse(
        status_code=error_response["code"],
        content={
            "code": error_response["code"],
            "message": error_response["message"],
        },
    )
