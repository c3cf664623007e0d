"""积分公式检查：Monte Carlo Cauchy 积分对单演样例的复现与非单演负对照"""

import math
from typing import Callable, Dict, List, Tuple

import numpy as np

from ..core.config import settings
from ..core.rng import ball_shell, unit_directions
from ..octonion.algebra import Octonion
from ..octonion.fields import Constant, OctonionField, identity_field
from ..octonion.integral import IntegralEstimate, SphereSpec, cauchy_integral, estimate_omega8, omega8
from ..octonion.solutions import SEEDS, biaxial_field, fueter_field
from .base import Check, CheckValue, SuiteContext

SAMPLE_KEY = "integral"

# 积分点到球心的最大距离
INTERIOR_RADIUS = 0.3
# 每个样例随机取的积分点数，报告最差的一个
REPRODUCTION_POINTS = 5
# omega8 命中法估计允许的标准误差倍数
OMEGA8_STDERR_MULTIPLE = 3.0
# 负对照要求的标准误差倍数
NEGATIVE_STDERR_MULTIPLE = 5.0

TRANSLATION = np.array([0.5, -0.25, 0.0, 0.125, 0.25, 0.0, -0.5, 0.0])

# 固定积分点上的复现：(检查名后缀, 场, 点)
NAMED_POINTS: List[Tuple[str, OctonionField, np.ndarray]] = [
    ("fueter-1.at_0.3e0", fueter_field(1), np.array([0.3, 0, 0, 0, 0, 0, 0, 0])),
    ("biaxial-z.at_0.2e1+0.1e4", biaxial_field(SEEDS["z"]), np.array([0, 0.2, 0, 0, 0.1, 0, 0, 0])),
]


def _interior_point(ctx: SuiteContext, name: str) -> np.ndarray:
    return INTERIOR_RADIUS * unit_directions(ctx.rng(f"integral/point/{name}"), 1, 8)[0]


def _integrate(ctx: SuiteContext, f: OctonionField, spec: SphereSpec, x: np.ndarray) -> IntegralEstimate:
    return cauchy_integral(f, spec, x, ctx.count(SAMPLE_KEY), ctx.seed, workers=ctx.workers)


def _reproduce_at(ctx: SuiteContext, f: OctonionField, x: np.ndarray) -> CheckValue:
    estimate = _integrate(ctx, f, SphereSpec.unit(), x)
    target = f.at(x)
    return estimate.reproduction_ratio(target), {
        "point": x.tolist(),
        "stderr": estimate.stderr,
        "max_deviation": float(np.max(estimate.deviation(target))),
        "skipped": estimate.skipped,
    }


def _reproduction(name: str, f: OctonionField) -> Callable[[SuiteContext], CheckValue]:
    def run(ctx: SuiteContext) -> CheckValue:
        points = ball_shell(ctx.rng(f"integral/points/{name}"), REPRODUCTION_POINTS, 8, 0.0, INTERIOR_RADIUS)
        ratio, detail = max((_reproduce_at(ctx, f, x) for x in points), key=lambda r: r[0])
        return ratio, {**detail, "points": len(points)}

    return run


def _reproduction_at(f: OctonionField, x: np.ndarray) -> Callable[[SuiteContext], CheckValue]:
    return lambda ctx: _reproduce_at(ctx, f, x)


def omega8_closed_form(ctx: SuiteContext) -> CheckValue:
    """2 pi^4 / Gamma(4) = pi^4 / 3"""
    return abs(omega8() - math.pi**4 / 3.0)


def omega8_monte_carlo(ctx: SuiteContext) -> CheckValue:
    estimate, stderr = estimate_omega8(ctx.count(SAMPLE_KEY), ctx.seed)
    return abs(estimate - omega8()) / stderr, {"estimate": estimate, "stderr": stderr}


def translation_covariance(ctx: SuiteContext) -> CheckValue:
    """平移球心与平移场给出同一组样本值：两次估计逐分量相等"""
    f = fueter_field(3)
    x = _interior_point(ctx, "translation")
    moved = _integrate(ctx, f, SphereSpec(TRANSLATION, 1.0), x + TRANSLATION)
    shifted = _integrate(ctx, f.translated(TRANSLATION), SphereSpec.unit(), x)
    return float(np.max(np.abs(moved.value.c - shifted.value.c)))


def translated_reproduction(ctx: SuiteContext) -> CheckValue:
    f = fueter_field(5)
    x = _interior_point(ctx, "translated-reproduction") + TRANSLATION
    estimate = _integrate(ctx, f, SphereSpec(TRANSLATION, 1.0), x)
    return estimate.reproduction_ratio(f.at(x))


def negative_control(ctx: SuiteContext) -> CheckValue:
    """f(x) = x 不是单演的，积分不复现它"""
    f = identity_field()
    x = _interior_point(ctx, "negative")
    estimate = _integrate(ctx, f, SphereSpec.unit(), x)
    return estimate.stderr_multiple(f.at(x)), {"point": x.tolist(), "stderr": estimate.stderr}


def reproduction_fixtures() -> Dict[str, OctonionField]:
    fixtures: Dict[str, OctonionField] = {"constant": Constant(Octonion([1.0, -2.0, 0.5, 0, 3.0, 0, -1.0, 0.25]))}
    for f in [fueter_field(1), fueter_field(4)] + [biaxial_field(SEEDS[s]) for s in ("const", "z", "exp")]:
        fixtures[f.name] = f
    return fixtures


def checks() -> List[Check]:
    out = [
        Check("integral.omega8.closed_form", omega8_closed_form, settings.TOL_ALGEBRA),
        Check("integral.omega8.monte_carlo", omega8_monte_carlo, OMEGA8_STDERR_MULTIPLE),
    ]
    out += [Check(f"integral.reproduce.{name}", _reproduction(name, f), 1.0) for name, f in reproduction_fixtures().items()]
    out += [Check(f"integral.reproduce.{name}", _reproduction_at(f, x), 1.0) for name, f, x in NAMED_POINTS]
    out += [
        Check("integral.translation_covariance", translation_covariance, settings.TOL_INVARIANCE),
        Check("integral.reproduce.translated_sphere", translated_reproduction, 1.0),
        Check("integral.negative.identity_field", negative_control, NEGATIVE_STDERR_MULTIPLE, "above"),
    ]
    return out
