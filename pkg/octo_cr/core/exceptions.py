"""
自定义异常类定义
"""
from typing import Any, Dict, Optional


class OctoCRError(Exception):
    """octo-cr 基础异常类"""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}


class ConfigurationError(OctoCRError):
    """配置错误"""

    pass


class ValidationError(OctoCRError):
    """参数验证错误"""

    pass


class DomainError(OctoCRError):
    """定义域错误：不可逆元素、非单位四元数、不可行坐标、场定义域之外的点"""

    pass


class SingularityError(DomainError):
    """Cauchy 核奇点"""

    pass


class PreconditionError(OctoCRError):
    """前置条件不满足（例如积分点离边界太近）"""

    pass


class FixtureError(OctoCRError):
    """内置数据文件缺失或格式错误"""

    pass


class ReportError(OctoCRError):
    """报告读写错误"""

    pass
