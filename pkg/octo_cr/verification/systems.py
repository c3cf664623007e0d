"""方程组检查：生成与转录的比对、实/复/四元数方程组与抽象算子的等价性、二阶恒等式"""

from typing import Callable, List, Sequence

import numpy as np

from ..core.config import settings
from ..core.rng import ball_shell
from ..octonion.algebra import from_quaternionic
from ..octonion.fields import OctonionField, QuadraticField, random_quadratic_field
from ..octonion.operators import (
    bracketing_gap,
    cauchy_riemann_right,
    factorization_residual,
    finite_difference_deviation,
    jet_value_deviation,
    recombination_residual,
)
from ..octonion.solutions import fueter_field
from ..octonion.systems import (
    QuaternionicSplit,
    corollary_special_case_residual,
    decomposition_deviation,
    diff_systems,
    equivalence_report,
    generated_complex_system,
    generated_real_system,
    quaternionic_system_residual,
    riesz_system_residual,
)
from .base import Check, CheckValue, SuiteContext

FIELDS_KEY = "system_fields"
POINTS_KEY = "system_points"
FD_POINTS_KEY = "fd_points"

# 二阶检查只在前几个随机场上做
SECOND_ORDER_FIELDS = 5
SECOND_ORDER_POINTS = 10

# 分量掩码：g、h 为实值（特殊情形 a）与纯虚（特殊情形 b）
REAL_SPLIT_MASK = np.array([1.0, 0, 0, 0, 1.0, 0, 0, 0])
VECTOR_SPLIT_MASK = 1.0 - REAL_SPLIT_MASK


def _fields(ctx: SuiteContext, limit: int = 0) -> List[QuadraticField]:
    count = ctx.count(FIELDS_KEY)
    if limit:
        count = min(count, limit)
    return [random_quadratic_field(ctx.rng(f"systems/field/{k}"), name=f"quadratic-{k}") for k in range(count)]


def _points(ctx: SuiteContext, name: str, limit: int = 0) -> np.ndarray:
    count = ctx.count(POINTS_KEY)
    if limit:
        count = min(count, limit)
    return ball_shell(ctx.rng(f"systems/points/{name}"), count, 8, 0.0, 1.0)


def _masked_field(ctx: SuiteContext, mask: np.ndarray, name: str) -> QuadraticField:
    base = random_quadratic_field(ctx.rng(f"systems/masked/{name}"), name=name)
    return QuadraticField(base.constant * mask, base.linear * mask[:, None], base.quadratic * mask[:, None, None], name)


def _worst(fields: Sequence[OctonionField], points: np.ndarray, fn: Callable[[OctonionField, np.ndarray], float]) -> float:
    return max(fn(f, x) for f in fields for x in points)


# 生成与转录 -----------------------------------------------------------------


def unacknowledged_differences(ctx: SuiteContext) -> CheckValue:
    mismatches = diff_systems()
    open_items = [m.to_dict() for m in mismatches if not m.acknowledged]
    detail = {"acknowledged": sum(1 for m in mismatches if m.acknowledged)}
    if open_items:
        detail["unacknowledged"] = open_items
    return float(len(open_items)), detail


def first_real_equation(ctx: SuiteContext) -> CheckValue:
    """第一条实方程在 d_j f_j 上的系数为 (+1, -1, ..., -1)"""
    m = generated_real_system().coefficient_matrix(0)
    expected = np.diag([1.0, -1, -1, -1, -1, -1, -1, -1])
    return float(np.max(np.abs(m - expected)))


def complex_shape(ctx: SuiteContext) -> CheckValue:
    system = generated_complex_system()
    shapes = [system.operator_slots(k).shape for k in range(len(system.equations))]
    ok = len(system.equations) == 4 and all(s == (8, 8) for s in shapes)
    return 0.0 if ok else 1.0


# 等价性 ---------------------------------------------------------------------


def equivalence(ctx: SuiteContext) -> CheckValue:
    points = _points(ctx, "equivalence")
    reports = [equivalence_report(f, points) for f in _fields(ctx)]
    disagreements = sum(len(r.disagreements) for r in reports)
    repack = max(r.max_repack for r in reports)
    return float(disagreements), {"repack": repack, "points": len(points) * len(reports)}


def repacking(ctx: SuiteContext) -> CheckValue:
    points = _points(ctx, "repacking", SECOND_ORDER_POINTS)
    return max(equivalence_report(f, points).max_repack for f in _fields(ctx))


def right_system_matches_right_operator(ctx: SuiteContext) -> CheckValue:
    """右四元数方程组重组后等于 f d_x"""

    def deviation(f: OctonionField, x: np.ndarray) -> float:
        q1, q2 = quaternionic_system_residual(QuaternionicSplit.from_field(f), x, "right").quaternions()
        return float(np.max(np.abs(from_quaternionic(q1, q2).c - cauchy_riemann_right(f, x).c)))

    return _worst(_fields(ctx, SECOND_ORDER_FIELDS), _points(ctx, "right", SECOND_ORDER_POINTS), deviation)


def split_reassembly(ctx: SuiteContext) -> CheckValue:
    points = _points(ctx, "reassembly")
    return max(QuaternionicSplit.from_field(f).reassembly_residual(f, points) for f in _fields(ctx))


# 特殊情形 -------------------------------------------------------------------


def _corollary_check(mask: np.ndarray, part: str) -> Callable[[SuiteContext], CheckValue]:
    def run(ctx: SuiteContext) -> CheckValue:
        worst = 0.0
        points = _points(ctx, f"corollary-{part}", SECOND_ORDER_POINTS)
        for k in range(SECOND_ORDER_FIELDS):
            f = _masked_field(ctx, mask, f"corollary-{part}-{k}")
            split = QuaternionicSplit.from_field(f)
            for x in points:
                full = quaternionic_system_residual(split, x, "left").values
                special = corollary_special_case_residual(split, x, part).values
                worst = max(worst, float(np.max(np.abs(full - special))))
        return worst

    return run


def corollary_a_fixture(ctx: SuiteContext) -> CheckValue:
    """g = x0 x4，h = (x4^2 - x0^2) / 2 满足特殊情形 (a)"""
    zero = np.zeros(8)
    g_quadratic = np.zeros((8, 8, 8))
    g_quadratic[0, 0, 4] = 1.0
    h_quadratic = np.zeros((8, 8, 8))
    h_quadratic[0, 4, 4] = 0.5
    h_quadratic[0, 0, 0] = -0.5
    split = QuaternionicSplit(
        QuadraticField(zero, np.zeros((8, 8)), g_quadratic, "x0 x4"),
        QuadraticField(zero, np.zeros((8, 8)), h_quadratic, "(x4^2 - x0^2)/2"),
        name="corollary-a",
    )
    points = _points(ctx, "corollary-a-fixture")
    return max(corollary_special_case_residual(split, x, "a").max_norm for x in points)


# 算子恒等式 -----------------------------------------------------------------


def decomposition(ctx: SuiteContext) -> CheckValue:
    return _worst(_fields(ctx, SECOND_ORDER_FIELDS), _points(ctx, "decomposition", SECOND_ORDER_POINTS), decomposition_deviation)


def factorization(ctx: SuiteContext) -> CheckValue:
    return _worst(
        _fields(ctx, SECOND_ORDER_FIELDS),
        _points(ctx, "factorization", SECOND_ORDER_POINTS),
        lambda f, x: factorization_residual(f, x).norm(),
    )


def bracketing(ctx: SuiteContext) -> CheckValue:
    return _worst(_fields(ctx, SECOND_ORDER_FIELDS), _points(ctx, "bracketing", SECOND_ORDER_POINTS), bracketing_gap)


def recombination(ctx: SuiteContext) -> CheckValue:
    return _worst(_fields(ctx, SECOND_ORDER_FIELDS), _points(ctx, "recombination", SECOND_ORDER_POINTS), recombination_residual)


def finite_differences(ctx: SuiteContext) -> CheckValue:
    first, second = 0.0, 0.0
    points = ball_shell(ctx.rng("systems/points/fd"), ctx.count(FD_POINTS_KEY), 8, 0.0, 1.0)
    fields = _fields(ctx)
    for f in fields:
        for x in points:
            a, b = finite_difference_deviation(f, x)
            first, second = max(first, a), max(second, b)
    # 两阶容差不同，报告偏差与各自容差之比的较大者
    ratio = max(first / settings.TOL_FD_FIRST, second / settings.TOL_FD_SECOND)
    return ratio, {"first": first, "second": second, "fields": len(fields), "points": len(points)}


def jet_values(ctx: SuiteContext) -> CheckValue:
    return _worst(_fields(ctx), _points(ctx, "jet-values", SECOND_ORDER_POINTS), jet_value_deviation)


def riesz_on_fueter(ctx: SuiteContext) -> CheckValue:
    points = _points(ctx, "riesz")
    return max(riesz_system_residual(fueter_field(i), x).max_norm for i in range(1, 8) for x in points)


def checks() -> List[Check]:
    rep = settings.TOL_REPACK
    inv = settings.TOL_INVARIANCE
    first = settings.TOL_FIRST_ORDER
    return [
        Check("systems.diff.unacknowledged", unacknowledged_differences, 0.0),
        Check("systems.real.first_equation", first_real_equation, 0.0),
        Check("systems.complex.shape", complex_shape, 0.0),
        Check("systems.equivalence.disagreements", equivalence, 0.0),
        Check("systems.equivalence.repacking", repacking, rep),
        Check("systems.quaternionic.right_operator", right_system_matches_right_operator, rep),
        Check("systems.quaternionic.reassembly", split_reassembly, rep),
        Check("systems.corollary.a_matches_full_system", _corollary_check(REAL_SPLIT_MASK, "a"), rep),
        Check("systems.corollary.b_matches_full_system", _corollary_check(VECTOR_SPLIT_MASK, "b"), rep),
        Check("systems.corollary.a_fixture", corollary_a_fixture, first),
        Check("systems.inframonogenic.decomposition", decomposition, inv),
        Check("systems.factorization", factorization, inv),
        Check("systems.inframonogenic.bracketing_gap", bracketing, inv),
        Check("systems.operator.recombination", recombination, rep),
        Check("systems.jet.finite_differences", finite_differences, 1.0),
        Check("systems.jet.values", jet_values, rep),
        Check("systems.riesz.fueter", riesz_on_fueter, first),
    ]
