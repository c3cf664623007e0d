"""
验证报告模型

JSON 结构（report_version = 1）：
    {
      "report_version": 1,
      "suite": "algebra",
      "seed": 42,
      "samples": {"algebra": 1000},
      "records": [
        {"name": "...", "max_residual": 0.0, "tolerance": 1e-12, "expect": "below", "passed": true}
      ],
      "summary": {"total": 1, "passed": 1, "failed": 0}
    }
runtime_ms 与 detail 只在有值时出现；同样的 (suite, seed, samples) 产生逐字节相同的报告。
"""

import json
import math
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_serializer, model_validator

from ..core.exceptions import ReportError

REPORT_VERSION = 1

Expectation = Literal["below", "above"]


class CheckRecord(BaseModel):
    """单项检查：expect=below 时要求 max_residual <= tolerance，above 时要求 > tolerance"""

    name: str
    max_residual: Optional[float]
    tolerance: float
    expect: Expectation = "below"
    passed: bool
    runtime_ms: Optional[float] = None
    detail: Optional[Dict[str, Any]] = None

    @model_serializer(mode="wrap")
    def _drop_empty_optionals(self, handler: Any) -> Dict[str, Any]:
        data = handler(self)
        for key in ("runtime_ms", "detail"):
            if data.get(key) is None:
                data.pop(key, None)
        return data

    @classmethod
    def evaluate(
        cls,
        name: str,
        value: float,
        tolerance: float,
        expect: Expectation = "below",
        detail: Optional[Dict[str, Any]] = None,
        runtime_ms: Optional[float] = None,
    ) -> "CheckRecord":
        value = float(value)
        if not math.isfinite(value):
            # 非有限值一律判为失败，JSON 中写作 null
            return cls(
                name=name,
                max_residual=None,
                tolerance=tolerance,
                expect=expect,
                passed=False,
                runtime_ms=runtime_ms,
                detail={**(detail or {}), "non_finite": repr(value)},
            )
        passed = value <= tolerance if expect == "below" else value > tolerance
        return cls(
            name=name,
            max_residual=value,
            tolerance=tolerance,
            expect=expect,
            passed=passed,
            runtime_ms=runtime_ms,
            detail=detail,
        )


class Summary(BaseModel):
    total: int
    passed: int
    failed: int


class SuiteReport(BaseModel):
    report_version: int = REPORT_VERSION
    suite: str
    seed: int
    samples: Dict[str, int] = Field(default_factory=dict)
    records: List[CheckRecord] = Field(default_factory=list)
    summary: Summary

    @model_validator(mode="after")
    def _summary_matches_records(self) -> "SuiteReport":
        passed = sum(1 for r in self.records if r.passed)
        expected = Summary(total=len(self.records), passed=passed, failed=len(self.records) - passed)
        if self.summary != expected:
            raise ValueError(f"summary {self.summary} 与记录不一致，应为 {expected}")
        return self

    @classmethod
    def build(cls, suite: str, seed: int, samples: Dict[str, int], records: List[CheckRecord]) -> "SuiteReport":
        passed = sum(1 for r in records if r.passed)
        return cls(
            suite=suite,
            seed=seed,
            samples=dict(samples),
            records=records,
            summary=Summary(total=len(records), passed=passed, failed=len(records) - passed),
        )

    @property
    def all_passed(self) -> bool:
        return self.summary.failed == 0

    def failed_records(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"


def write_report(report: SuiteReport, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    except OSError as e:
        raise ReportError(f"报告写入失败: {path}: {e}", error_code="report_write") from e


def read_report(path: str) -> SuiteReport:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return SuiteReport.model_validate(json.load(fh))
    except OSError as e:
        raise ReportError(f"报告读取失败: {path}: {e}", error_code="report_read") from e
    except ValueError as e:
        raise ReportError(f"报告格式错误: {path}: {e}", error_code="report_malformed") from e
