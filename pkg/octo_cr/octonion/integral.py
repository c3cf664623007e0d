"""
八元数 Cauchy 积分公式的 Monte Carlo 校验

    f(x) = 1/omega8 * int_{dM} K(x, y) (n(y) f(y)) dS(y),   K(x, y) = conj(x - y) / |x - y|^8

样本按块生成：第 c 块使用 stream(seed, "sphere/c")，每块独立求和后按块序合并，
因此结果与线程数无关。
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterator, List, Optional, Tuple

import numpy as np
from scipy.special import gamma

from ..core.config import settings
from ..core.exceptions import PreconditionError, SingularityError, ValidationError
from ..core.rng import stream, unit_directions
from .algebra import CONJ_SIGNS, Octonion, conjugate, multiply_arrays, norm
from .fields import POLE_RADIUS_SQUARED, OctonionField

logger = logging.getLogger(__name__)

SINGULAR_DISTANCE = 1e-12


@dataclass(frozen=True)
class SphereSpec:
    center: np.ndarray
    radius: float

    def __post_init__(self) -> None:
        c = np.array(self.center.c if isinstance(self.center, Octonion) else self.center, dtype=float).reshape(8)
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        if not self.radius > 0:
            raise ValidationError(f"球半径必须为正: {self.radius}", error_code="bad_radius")

    @classmethod
    def unit(cls) -> "SphereSpec":
        return cls(np.zeros(8), 1.0)

    def area(self) -> float:
        return omega8() * self.radius**7


@dataclass(frozen=True)
class IntegralEstimate:
    value: Octonion
    stderr: float
    component_stderr: np.ndarray = field(repr=False)
    samples: int
    seed: int
    skipped: int = 0

    def deviation(self, target: Octonion) -> np.ndarray:
        return np.abs(self.value.c - target.c)

    def reproduction_ratio(self, target: Octonion) -> float:
        """max_c |est_c - f_c| / max(3 stderr_c, 2% |f(x)| + 1e-3)，不超过 1 即复现"""
        allowance = np.maximum(3.0 * self.component_stderr, 0.02 * norm(target) + 1e-3)
        return float(np.max(self.deviation(target) / allowance))

    def stderr_multiple(self, target: Octonion) -> float:
        """|est - f(x)| / stderr"""
        return float(np.linalg.norm(self.value.c - target.c) / max(self.stderr, 1e-300))


# ---------------------------------------------------------------------------
# 核与常数
# ---------------------------------------------------------------------------


def cauchy_kernel(x: Octonion, y: Octonion) -> Octonion:
    d = x - y
    r = norm(d)
    if r < SINGULAR_DISTANCE:
        raise SingularityError(f"Cauchy 核在 x = y 处奇异 (|x - y| = {r:.3e})", error_code="kernel_pole")
    return conjugate(d) / r**8


def omega8() -> float:
    """单位 S^7 的面积 2 pi^4 / Gamma(4)"""
    return float(2.0 * math.pi**4 / gamma(4.0))


def estimate_omega8(n: int, seed: int, chunk: Optional[int] = None) -> Tuple[float, float]:
    """立方体 [-1, 1]^8 中的命中法估计单位球体积，再乘以 8 得到 S^7 面积；返回 (估计值, 标准误差)"""
    size = chunk or settings.INTEGRAL_CHUNK
    hits = 0
    for c, count in _chunks(n, size):
        pts = stream(seed, f"omega8/{c}").uniform(-1.0, 1.0, (count, 8))
        hits += int(np.count_nonzero(np.einsum("ij,ij->i", pts, pts) <= 1.0))
    p = hits / n
    scale = 8.0 * 2.0**8
    return scale * p, scale * math.sqrt(p * (1.0 - p) / n)


# ---------------------------------------------------------------------------
# 球面采样
# ---------------------------------------------------------------------------


def _chunks(n: int, size: int) -> Iterator[Tuple[int, int]]:
    if n < 1:
        raise ValidationError(f"样本数必须 >= 1: {n}", error_code="bad_samples")
    full, rest = divmod(n, size)
    for c in range(full):
        yield c, size
    if rest:
        yield full, rest


def _chunk_directions(seed: int, c: int, count: int) -> np.ndarray:
    return unit_directions(stream(seed, f"sphere/{c}"), count, 8)


def sphere_sample(spec: SphereSpec, n: int, seed: int, chunk: Optional[int] = None) -> np.ndarray:
    """n 个球面均匀点，形状 (n, 8)"""
    size = chunk or settings.INTEGRAL_CHUNK
    parts = [spec.center + spec.radius * _chunk_directions(seed, c, count) for c, count in _chunks(n, size)]
    return np.concatenate(parts, axis=0)


# ---------------------------------------------------------------------------
# 积分
# ---------------------------------------------------------------------------


@dataclass
class _ChunkMoments:
    count: int
    mean: np.ndarray
    m2: np.ndarray
    skipped: int

    def merge(self, other: "_ChunkMoments") -> "_ChunkMoments":
        """两组样本矩的合并（Chan 等人的并行方差公式）"""
        n = self.count + other.count
        if n == 0:
            return _ChunkMoments(0, self.mean, self.m2, self.skipped + other.skipped)
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.count / n)
        m2 = self.m2 + other.m2 + delta**2 * (self.count * other.count / n)
        return _ChunkMoments(n, mean, m2, self.skipped + other.skipped)


def _integrand_chunk(
    f: OctonionField, spec: SphereSpec, x: np.ndarray, seed: int, c: int, count: int, orientation: float
) -> _ChunkMoments:
    dirs = _chunk_directions(seed, c, count)
    y = spec.center + spec.radius * dirs
    d = x - y
    r2 = np.einsum("ij,ij->i", d, d)
    keep = r2 >= POLE_RADIUS_SQUARED
    skipped = int(count - np.count_nonzero(keep))
    if skipped:
        logger.warning(f"块 {c}: 跳过 {skipped} 个落在核奇点上的样本")
        dirs, y, d, r2 = dirs[keep], y[keep], d[keep], r2[keep]
    normal_times_f = multiply_arrays(orientation * dirs, f.evaluate(y))
    kernel = d * CONJ_SIGNS / (r2**4)[:, None]
    values = multiply_arrays(kernel, normal_times_f)
    n = values.shape[0]
    if n == 0:
        return _ChunkMoments(0, np.zeros(8), np.zeros(8), skipped)
    mean = np.sum(values, axis=0) / n
    m2 = np.sum((values - mean) ** 2, axis=0)
    return _ChunkMoments(n, mean, m2, skipped)


def cauchy_integral(
    f: OctonionField,
    spec: SphereSpec,
    x: Any,
    n: int,
    seed: int,
    workers: Optional[int] = None,
    chunk: Optional[int] = None,
) -> IntegralEstimate:
    """(面积 / omega8) * mean_i K(x, y_i)(n(y_i) f(y_i))；f 须在闭球上左单演（调用方保证）"""
    xp = np.asarray(x.c if isinstance(x, Octonion) else x, dtype=float).reshape(8)
    distance = float(np.linalg.norm(xp - spec.center))
    limit = spec.radius * (1.0 - settings.INTEGRAL_MARGIN)
    if distance > limit:
        raise PreconditionError(
            f"积分点离边界太近: |x - center| = {distance:.6g} > {limit:.6g}",
            error_code="interior_margin",
            details={"distance": distance, "limit": limit},
        )

    size = chunk or settings.INTEGRAL_CHUNK
    orientation = float(settings.NORMAL_ORIENTATION)
    jobs = list(_chunks(n, size))
    max_workers = workers or settings.SWEEP_WORKERS

    def run(job: Tuple[int, int]) -> _ChunkMoments:
        c, count = job
        return _integrand_chunk(f, spec, xp, seed, c, count, orientation)

    if max_workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            parts: List[_ChunkMoments] = list(pool.map(run, jobs))
    else:
        parts = [run(job) for job in jobs]

    total = parts[0]
    for part in parts[1:]:
        total = total.merge(part)
    if total.count == 0:
        raise SingularityError("所有样本都落在核奇点上", error_code="kernel_pole")

    scale = spec.area() / omega8()
    variance = total.m2 / max(total.count - 1, 1)
    component_stderr = scale * np.sqrt(variance / total.count)
    estimate = IntegralEstimate(
        value=Octonion(scale * total.mean),
        stderr=float(np.linalg.norm(component_stderr)),
        component_stderr=component_stderr,
        samples=total.count,
        seed=seed,
        skipped=total.skipped,
    )
    logger.debug(f"{f.name} 在 {xp.tolist()} 处的积分估计: {estimate.value!r} ± {estimate.stderr:.2e}")
    return estimate
