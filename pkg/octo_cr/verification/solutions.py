"""显式解检查：Fueter 场、双轴解与 Cauchy 核的单演性、调和性、约化方程组与符号诊断"""

from typing import Dict, List

import numpy as np

from ..core.config import settings
from ..core.rng import ball_shell
from ..octonion.algebra import Octonion, random_unit_quaternion
from ..octonion.fields import OctonionField
from ..octonion.operators import cauchy_riemann_left, finite_difference_deviation, laplacian
from ..octonion.solutions import (
    DISPLAY_VARIANTS,
    SEEDS,
    BiaxialCoordinates,
    biaxial_field,
    diagnose_display_signs,
    monogenic_fixtures,
    pq_residual,
    reduced_system_residual,
    rotate_biaxial,
    seed_residual,
    transport_residual,
)
from ..octonion.systems import QuaternionicSplit, equivalence_report, split_harmonicity
from .base import Check, CheckValue, SuiteContext

SAMPLE_KEY = "solutions"

# 等价性报告每个样例用的点数
EQUIVALENCE_POINTS = 10
# 符号诊断使用非常数种子：常数种子下 beta 取反与原式重合
DIAGNOSTIC_SEED = "z"


def _points(ctx: SuiteContext, name: str, radius: float = 0.0) -> np.ndarray:
    r = radius or settings.SOLUTION_RADIUS
    return ball_shell(ctx.rng(f"solutions/points/{name}"), ctx.count(SAMPLE_KEY), 8, 0.0, r)


def _per_fixture(values: Dict[str, float]) -> CheckValue:
    return max(values.values()), values


# 单演性与调和性 -------------------------------------------------------------


def left_monogenic(ctx: SuiteContext) -> CheckValue:
    points = _points(ctx, "monogenic")
    return _per_fixture({f.name: max(cauchy_riemann_left(f, x).norm() for x in points) for f in monogenic_fixtures()})


def harmonic(ctx: SuiteContext) -> CheckValue:
    points = _points(ctx, "harmonic")
    return _per_fixture({f.name: max(laplacian(f, x).norm() for x in points) for f in monogenic_fixtures()})


def split_harmonic(ctx: SuiteContext) -> CheckValue:
    points = _points(ctx, "split-harmonic")[:EQUIVALENCE_POINTS]
    values = {}
    for f in monogenic_fixtures():
        split = QuaternionicSplit.from_field(f)
        values[f.name] = max(max(split_harmonicity(split, x)) for x in points)
    return _per_fixture(values)


def equivalence_on_fixtures(ctx: SuiteContext) -> CheckValue:
    """单演样例在所有方程组上都判为零"""
    points = _points(ctx, "equivalence")[:EQUIVALENCE_POINTS]
    reports = [equivalence_report(f, points) for f in monogenic_fixtures()]
    failing = {r.field_name: r.disagreements for r in reports if r.disagreements}
    worst = max(r.max_system for r in reports)
    return float(len(failing)), {"max_system": worst, **({"disagreements": failing} if failing else {})}


def system_residuals_vanish(ctx: SuiteContext) -> CheckValue:
    points = _points(ctx, "systems")[:EQUIVALENCE_POINTS]
    return _per_fixture({f.name: equivalence_report(f, points).max_system for f in monogenic_fixtures()})


def finite_differences(ctx: SuiteContext) -> CheckValue:
    """有限差分只在单位球内做，覆盖全部内置样例"""
    points = _points(ctx, "fd", 1.0)
    first, second = 0.0, 0.0
    for f in monogenic_fixtures():
        for x in points:
            a, b = finite_difference_deviation(f, x)
            first, second = max(first, a), max(second, b)
    ratio = max(first / settings.TOL_FD_FIRST, second / settings.TOL_FD_SECOND)
    return ratio, {"first": first, "second": second, "points": len(points)}


# 双轴解 ---------------------------------------------------------------------


def _coordinates(ctx: SuiteContext) -> List[BiaxialCoordinates]:
    return [BiaxialCoordinates.from_point(x) for x in _points(ctx, "biaxial")]


def reduced_system(ctx: SuiteContext) -> CheckValue:
    coords = _coordinates(ctx)
    values = {
        name: max(float(np.max(np.abs(reduced_system_residual(seed, c)))) for c in coords)
        for name, seed in SEEDS.items()
    }
    return _per_fixture(values)


def transport(ctx: SuiteContext) -> CheckValue:
    coords = _coordinates(ctx)
    values = {
        name: max(float(np.max(np.abs(transport_residual(seed, c)))) for c in coords) for name, seed in SEEDS.items()
    }
    return _per_fixture(values)


def pq_system(ctx: SuiteContext) -> CheckValue:
    rng = ctx.rng("solutions/pq")
    samples = rng.uniform(-2.0, 2.0, (ctx.count(SAMPLE_KEY), 3))
    return max(float(np.max(np.abs(pq_residual(c, a, b)))) for c, a, b in samples)


def holomorphic_seeds(ctx: SuiteContext) -> CheckValue:
    points = ctx.rng("solutions/seeds").uniform(-1.5, 1.5, (ctx.count(SAMPLE_KEY), 2))
    return _per_fixture({name: seed_residual(seed, points) for name, seed in SEEDS.items()})


def display_signs(ctx: SuiteContext) -> CheckValue:
    points = _points(ctx, "signs")[:EQUIVALENCE_POINTS]
    diagnosis = diagnose_display_signs(SEEDS[DIAGNOSTIC_SEED], points)
    vanishing = [v for v in DISPLAY_VARIANTS if diagnosis[v] <= settings.TOL_FIRST_ORDER]
    return diagnosis["printed"], {"seed": DIAGNOSTIC_SEED, "residuals": diagnosis, "vanishing": vanishing}


def other_variants_fail(ctx: SuiteContext) -> CheckValue:
    points = _points(ctx, "signs")[:EQUIVALENCE_POINTS]
    diagnosis = diagnose_display_signs(SEEDS[DIAGNOSTIC_SEED], points)
    return min(v for k, v in diagnosis.items() if k != "printed")


def rotation_invariance(ctx: SuiteContext) -> CheckValue:
    """双轴解在 (u, v) -> (u0 + conj(s) u s, v0 + conj(s) v s) 下不变"""
    rng = ctx.rng("solutions/rotation")
    fields: List[OctonionField] = [biaxial_field(seed) for seed in SEEDS.values()]
    worst = 0.0
    for x in _points(ctx, "rotation"):
        o = Octonion(x)
        rotated = rotate_biaxial(o, random_unit_quaternion(rng))
        for f in fields:
            worst = max(worst, float(np.max(np.abs(f.at(rotated.c).c - f.at(x).c))))
    return worst


def checks() -> List[Check]:
    first = settings.TOL_FIRST_ORDER
    second = settings.TOL_SECOND_ORDER
    return [
        Check("solutions.left_monogenic", left_monogenic, first),
        Check("solutions.harmonic", harmonic, second),
        Check("solutions.split_harmonic", split_harmonic, second),
        Check("solutions.equivalence.disagreements", equivalence_on_fixtures, 0.0),
        Check("solutions.systems_vanish", system_residuals_vanish, first),
        Check("solutions.jet.finite_differences", finite_differences, 1.0),
        Check("solutions.biaxial.reduced_system", reduced_system, first),
        Check("solutions.biaxial.transport", transport, first),
        Check("solutions.biaxial.pq_system", pq_system, first),
        Check("solutions.biaxial.seeds_holomorphic", holomorphic_seeds, first),
        Check("solutions.biaxial.display_signs", display_signs, first),
        Check("solutions.biaxial.other_variants_fail", other_variants_fail, 1e-6, "above"),
        Check("solutions.biaxial.rotation_invariance", rotation_invariance, settings.TOL_INVARIANCE),
    ]
