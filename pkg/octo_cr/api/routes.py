"""
只读 HTTP 接口：乘法表、方程组与验证报告

验证在线程池中执行，避免阻塞事件循环。
"""

import json
import logging
from typing import Optional

from fastapi import APIRouter, Query
from fastapi.concurrency import run_in_threadpool
from fastapi.responses import JSONResponse, PlainTextResponse, Response

from ..utils.formats import render_systems, render_table, systems_data, table_data
from ..verification.runner import run_suite

logger = logging.getLogger(__name__)

router = APIRouter(tags=["八元数"])


@router.get("/table")
async def get_table(format: str = Query("json", description="json / csv / markdown")) -> Response:
    """8x8 乘法表"""
    if format == "json":
        return JSONResponse(table_data())
    return PlainTextResponse(render_table(format))


@router.get("/systems")
async def get_systems(
    format: str = Query("json", description="json / markdown"),
    diff_paper: bool = Query(False, description="附带与手工转录版本的差异"),
) -> Response:
    """实 8x8 与复 4x4 方程组"""
    if format == "json":
        return JSONResponse(systems_data(diff_paper))
    return PlainTextResponse(render_systems(format, diff_paper))


@router.get("/verify/{suite}")
async def verify_suite(
    suite: str,
    seed: Optional[int] = Query(None),
    samples: Optional[int] = Query(None, description="覆盖主样本数"),
) -> Response:
    """运行验证套件；全部通过返回 200，否则 422，响应体都是完整报告"""
    report = await run_in_threadpool(run_suite, suite, seed, samples)
    logger.info(
        f"HTTP 验证完成: 通过 {report.summary.passed}/{report.summary.total}",
        extra={"suite": suite},
    )
    status = 200 if report.all_passed else 422
    return JSONResponse(json.loads(report.to_json()), status_code=status)
