"""
检查项的公共类型

一项检查是一个从 SuiteContext 计算出最大残差的函数；期望方向与容差在声明时确定。
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple, Union

import numpy as np

from ..core.rng import stream
from .report import Expectation

CheckValue = Union[float, Tuple[float, Dict[str, Any]]]


@dataclass(frozen=True)
class SuiteContext:
    seed: int
    samples: Dict[str, int] = field(default_factory=dict)
    workers: int = 1

    def count(self, key: str) -> int:
        return self.samples[key]

    def rng(self, name: str) -> np.random.Generator:
        return stream(self.seed, name)


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[SuiteContext], CheckValue]
    tolerance: float
    expect: Expectation = "below"


@dataclass(frozen=True)
class Outcome:
    value: float
    detail: Optional[Dict[str, Any]] = None

    @classmethod
    def of(cls, result: CheckValue) -> "Outcome":
        if isinstance(result, tuple):
            value, detail = result
            return cls(float(value), detail or None)
        return cls(float(result))


def max_relative(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """逐行 |lhs - rhs| / max(|lhs|, |rhs|) 的最大值"""
    diff = np.linalg.norm(lhs - rhs, axis=-1)
    scale = np.maximum(np.linalg.norm(lhs, axis=-1), np.linalg.norm(rhs, axis=-1))
    return float(np.max(diff / np.maximum(scale, 1e-300)))


def max_abs(lhs: np.ndarray, rhs: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(lhs) - np.asarray(rhs))))
