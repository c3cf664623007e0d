#!/usr/bin/env python3
"""
octo-cr 验证服务（开发模式）启动脚本

生产环境使用 start_app_prod.sh（gunicorn + uvicorn worker）。
"""

import uvicorn

from octo_cr.core.config import get_settings
from octo_cr.verification.runner import available_suites, resolve_seed


def main() -> None:
    settings = get_settings()
    base = f"http://{settings.HOST}:{settings.PORT}{settings.API_PREFIX}"

    print(f"启动 {settings.APP_NAME} {settings.APP_VERSION}")
    print(f"  乘法表:   {base}/table?format=json|csv|markdown")
    print(f"  方程组:   {base}/systems?diff_paper=true")
    print(f"  验证套件: {base}/verify/{{{'|'.join(available_suites())}}}")
    print(f"  默认种子: {resolve_seed()}，日志级别: {settings.LOG_LEVEL}，热重载: {settings.DEBUG}")

    uvicorn.run(
        "octo_cr.main:app",
        host=settings.HOST,
        port=settings.PORT,
        reload=settings.DEBUG,
        log_level=settings.LOG_LEVEL.lower(),
    )


if __name__ == "__main__":
    main()
