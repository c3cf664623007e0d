import time

from fastapi import FastAPI, Request

from . import __version__
from .api.health import router as health_router
from .api.routes import router as octonion_router
from .core.config import get_settings
from .core.error_handler import http_exception_handler
from .core.exceptions import OctoCRError
from .core.logging import setup_logging

settings = get_settings()
logger = setup_logging()

app = FastAPI(
    title=settings.APP_NAME,
    description="八元数 Cauchy-Riemann 方程组的生成、导出与数值验证",
    version=__version__,
)

VERIFY_PATH = f"{settings.API_PREFIX}/verify/"


def _suite_of(path: str) -> str:
    """/verify/{suite} 请求在日志中带上套件名，其余为 '-'"""
    if path.startswith(VERIFY_PATH):
        return path[len(VERIFY_PATH):].split("/", 1)[0] or "-"
    return "-"


@app.middleware("http")
async def log_requests(request: Request, call_next):
    """记录访问日志，并在响应头中返回处理耗时"""
    start = time.perf_counter()
    response = await call_next(request)
    elapsed = time.perf_counter() - start

    response.headers["X-Process-Time"] = f"{elapsed:.3f}"
    client = request.client.host if request.client else "unknown"
    logger.info(
        f"{request.method} {request.url.path} -> {response.status_code} ({elapsed:.3f}s, {client})",
        extra={"suite": _suite_of(request.url.path)},
    )
    return response


app.add_exception_handler(OctoCRError, http_exception_handler)
app.add_exception_handler(ValueError, http_exception_handler)

app.include_router(health_router)
app.include_router(octonion_router, prefix=settings.API_PREFIX)
