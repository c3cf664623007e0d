"""
验证套件的注册与执行

检查项可以并行执行，报告中的记录顺序始终是声明顺序；
不加 timings 时报告只依赖 (suite, seed, samples)。
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional

from ..core.config import settings
from ..core.exceptions import OctoCRError, ValidationError
from . import algebra, forms, integral, solutions, systems
from .base import Check, Outcome, SuiteContext
from .report import CheckRecord, SuiteReport

logger = logging.getLogger(__name__)

SUITE_ORDER = ("algebra", "forms", "systems", "solutions", "integral")
ALL = "all"

SUITES: Dict[str, Callable[[], List[Check]]] = {
    "algebra": algebra.checks,
    "forms": forms.checks,
    "systems": systems.checks,
    "solutions": solutions.checks,
    "integral": integral.checks,
}

# --samples 覆盖的主样本数
PRIMARY_SAMPLE_KEY = {
    "algebra": algebra.SAMPLE_KEY,
    "forms": forms.SAMPLE_KEY,
    "systems": systems.POINTS_KEY,
    "solutions": solutions.SAMPLE_KEY,
    "integral": integral.SAMPLE_KEY,
}


def available_suites() -> List[str]:
    return list(SUITE_ORDER) + [ALL]


def resolve_suites(suite: str) -> List[str]:
    if suite == ALL:
        return list(SUITE_ORDER)
    if suite not in SUITES:
        raise ValidationError(f"未知的验证套件: {suite}，可选 {available_suites()}", error_code="unknown_suite")
    return [suite]


def resolve_seed(seed: Optional[int] = None) -> int:
    if seed is not None:
        return int(seed)
    if settings.SEED is not None:
        return int(settings.SEED)
    return settings.DEFAULT_SEED


def default_samples(suite: str) -> Dict[str, int]:
    table = {
        "algebra": {algebra.SAMPLE_KEY: settings.ALGEBRA_SAMPLES},
        "forms": {forms.SAMPLE_KEY: settings.FORM_SAMPLES, forms.MAPS_KEY: settings.ORTHOGONAL_MAPS},
        "systems": {
            systems.FIELDS_KEY: settings.SYSTEM_FIELDS,
            systems.POINTS_KEY: settings.SYSTEM_POINTS,
            systems.FD_POINTS_KEY: settings.FD_POINTS,
        },
        "solutions": {solutions.SAMPLE_KEY: settings.SOLUTION_POINTS},
        "integral": {integral.SAMPLE_KEY: settings.INTEGRAL_SAMPLES},
    }
    out: Dict[str, int] = {}
    for name in resolve_suites(suite):
        out.update(table[name])
    return out


def resolve_samples(suite: str, override: Optional[int] = None) -> Dict[str, int]:
    samples = default_samples(suite)
    if override is not None:
        if override < 1:
            raise ValidationError(f"样本数必须 >= 1: {override}", error_code="bad_samples")
        for name in resolve_suites(suite):
            samples[PRIMARY_SAMPLE_KEY[name]] = int(override)
    return samples


def _run_check(check: Check, ctx: SuiteContext, timings: bool, log: logging.LoggerAdapter) -> CheckRecord:
    start = time.perf_counter()
    try:
        outcome = Outcome.of(check.run(ctx))
    except OctoCRError as e:
        log.warning(f"检查 {check.name} 异常: {e.message}")
        return CheckRecord(
            name=check.name,
            max_residual=None,
            tolerance=check.tolerance,
            expect=check.expect,
            passed=False,
            runtime_ms=_elapsed(start) if timings else None,
            detail={"error": e.error_code or type(e).__name__, "message": e.message},
        )
    except Exception as e:
        log.error(f"检查 {check.name} 出现未预期的异常: {e}", exc_info=True)
        return CheckRecord(
            name=check.name,
            max_residual=None,
            tolerance=check.tolerance,
            expect=check.expect,
            passed=False,
            runtime_ms=_elapsed(start) if timings else None,
            detail={"error": type(e).__name__, "message": str(e)},
        )

    record = CheckRecord.evaluate(
        check.name,
        outcome.value,
        check.tolerance,
        check.expect,
        detail=outcome.detail,
        runtime_ms=_elapsed(start) if timings else None,
    )
    if record.passed:
        log.debug(f"{check.name}: {outcome.value:.3e} ({check.expect} {check.tolerance:g})")
    else:
        log.warning(f"检查未通过 {check.name}: {outcome.value:.3e}，要求 {check.expect} {check.tolerance:g}")
    return record


def _elapsed(start: float) -> float:
    return round((time.perf_counter() - start) * 1000.0, 3)


def run_suite(
    suite: str,
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    workers: Optional[int] = None,
    timings: bool = False,
) -> SuiteReport:
    names = resolve_suites(suite)
    resolved_seed = resolve_seed(seed)
    sample_counts = resolve_samples(suite, samples)
    max_workers = settings.SWEEP_WORKERS if workers is None else workers
    if max_workers < 1:
        raise ValidationError(f"线程数必须 >= 1: {max_workers}", error_code="bad_workers")

    log = logging.LoggerAdapter(logger, {"suite": suite})
    ctx = SuiteContext(seed=resolved_seed, samples=sample_counts, workers=max_workers)
    checks = [check for name in names for check in SUITES[name]()]
    log.info(f"开始验证: {len(checks)} 项检查，seed={resolved_seed}，samples={sample_counts}")

    start = time.perf_counter()
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            records = list(pool.map(lambda c: _run_check(c, ctx, timings, log), checks))
    else:
        records = [_run_check(c, ctx, timings, log) for c in checks]

    report = SuiteReport.build(suite, resolved_seed, sample_counts, records)
    log.info(
        f"验证完成: 通过 {report.summary.passed}/{report.summary.total}，"
        f"耗时 {time.perf_counter() - start:.2f}s"
    )
    return report
