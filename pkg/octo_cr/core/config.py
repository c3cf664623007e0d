from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # 应用配置
    APP_NAME: str = "octo-cr 八元数分析验证服务"
    APP_VERSION: str = "1.0.0"
    API_PREFIX: str = ""

    # 基础配置
    DEBUG: str = "false"
    HOST: str = "0.0.0.0"
    PORT: int = 8000
    WORKERS: int = 1

    # 日志配置
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "logs"
    LOG_FILE: str = "octo_cr"
    LOG_TO_FILE: str = "false"

    # 随机种子（命令行未给出 --seed 时使用 OCTO_CR_SEED）
    SEED: Optional[int] = None
    DEFAULT_SEED: int = 42

    # 默认样本数
    ALGEBRA_SAMPLES: int = 1000
    FORM_SAMPLES: int = 1000
    ORTHOGONAL_MAPS: int = 100
    SYSTEM_FIELDS: int = 20
    SYSTEM_POINTS: int = 50
    SOLUTION_POINTS: int = 100
    FD_POINTS: int = 100
    INTEGRAL_SAMPLES: int = 1_000_000

    # 容差层级：每多一阶导数放宽一个数量级
    TOL_ALGEBRA: float = 1e-12
    TOL_REPACK: float = 1e-12
    TOL_INVARIANCE: float = 1e-10
    TOL_FIRST_ORDER: float = 1e-9
    TOL_SECOND_ORDER: float = 1e-7
    TOL_FD_FIRST: float = 1e-6
    TOL_FD_SECOND: float = 1e-4

    # 数值微分与积分
    FD_STEP: float = 1e-4
    SOLUTION_RADIUS: float = 1.5
    INTEGRAL_MARGIN: float = 0.1
    INTEGRAL_CHUNK: int = 65536
    NORMAL_ORIENTATION: int = -1
    SWEEP_WORKERS: int = 4

    model_config = SettingsConfigDict(
        env_prefix="OCTO_CR_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="allow",
    )


def parse_bool(value: str) -> bool:
    """宽松解析布尔字符串，允许行内 # 注释"""
    if isinstance(value, str):
        return value.lower().strip().split("#")[0].strip() in ("true", "1", "t", "yes", "y")
    return bool(value)


@lru_cache()
def get_settings() -> Settings:
    """获取配置单例"""
    settings = Settings()

    # 转换为布尔值
    settings.DEBUG = parse_bool(settings.DEBUG)
    settings.LOG_TO_FILE = parse_bool(settings.LOG_TO_FILE)

    return settings


# 创建全局配置实例
settings = get_settings()
