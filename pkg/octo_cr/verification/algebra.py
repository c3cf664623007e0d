"""代数层检查：结构常数、各级 Cayley-Dickson 的合成律、交错律、Moufang 恒等式与 e4 演算"""

from typing import Callable, List

import numpy as np

from ..core.config import settings
from ..core.rng import ball_shell
from ..octonion.algebra import (
    CONJ_SIGNS,
    E,
    E4_QUATERNION_RULES,
    E4_VECTOR_RULES,
    ONE,
    InvolutionKind,
    Octonion,
    Quaternion,
    Subalgebra,
    complex_components_product,
    conjugate_arrays,
    conjugate_via_norm,
    e4_basis_rules,
    from_quaternionic,
    involution,
    inverse,
    multiply_arrays,
    project,
    quaternion_multiply_arrays,
    quaternionic_form,
    random_quaternion,
    relative_error,
)
from ..octonion.fixtures import diff_table
from .base import Check, CheckValue, SuiteContext, max_abs, max_relative

SAMPLE_KEY = "algebra"


def _octonions(ctx: SuiteContext, name: str, count: int = 1) -> List[np.ndarray]:
    n = ctx.count(SAMPLE_KEY)
    pts = ball_shell(ctx.rng(f"algebra/{name}"), count * n, 8)
    return [pts[k * n : (k + 1) * n] for k in range(count)]


def _norms(x: np.ndarray) -> np.ndarray:
    return np.linalg.norm(x, axis=-1)


# 结构常数 -------------------------------------------------------------------


def table_fixture(ctx: SuiteContext) -> CheckValue:
    mismatches = diff_table()
    return float(len(mismatches)), ({"mismatches": mismatches} if mismatches else {})


# 合成律 ---------------------------------------------------------------------


def composition_octonion(ctx: SuiteContext) -> CheckValue:
    x, y = _octonions(ctx, "composition", 2)
    return float(np.max(np.abs(_norms(multiply_arrays(x, y)) - _norms(x) * _norms(y)) / (_norms(x) * _norms(y))))


def composition_quaternion(ctx: SuiteContext) -> CheckValue:
    n = ctx.count(SAMPLE_KEY)
    a = ball_shell(ctx.rng("algebra/composition-h"), 2 * n, 4)
    x, y = a[:n], a[n:]
    return float(
        np.max(np.abs(_norms(quaternion_multiply_arrays(x, y)) - _norms(x) * _norms(y)) / (_norms(x) * _norms(y)))
    )


def composition_complex(ctx: SuiteContext) -> CheckValue:
    n = ctx.count(SAMPLE_KEY)
    a = ball_shell(ctx.rng("algebra/composition-c"), 2 * n, 2)
    x, y = a[:n], a[n:]
    re, im = complex_components_product([x[:, 0], x[:, 1]], [y[:, 0], y[:, 1]])
    product = np.hypot(re, im)
    return float(np.max(np.abs(product - _norms(x) * _norms(y)) / (_norms(x) * _norms(y))))


def quaternion_associativity(ctx: SuiteContext) -> CheckValue:
    n = ctx.count(SAMPLE_KEY)
    a = ball_shell(ctx.rng("algebra/associative-h"), 3 * n, 4)
    x, y, z = a[:n], a[n : 2 * n], a[2 * n :]
    m = quaternion_multiply_arrays
    return max_relative(m(m(x, y), z), m(x, m(y, z)))


# 交错律与 Moufang -----------------------------------------------------------


def alternativity(ctx: SuiteContext) -> CheckValue:
    x, y = _octonions(ctx, "alternativity", 2)
    m = multiply_arrays
    left = max_relative(m(x, m(x, y)), m(m(x, x), y))
    right = max_relative(m(m(x, y), y), m(x, m(y, y)))
    flexible = max_relative(m(m(x, y), x), m(x, m(y, x)))
    return max(left, right, flexible), {"left": left, "right": right, "flexible": flexible}


def moufang(ctx: SuiteContext) -> CheckValue:
    x, y, z = _octonions(ctx, "moufang", 3)
    m = multiply_arrays
    middle = m(m(x, y), m(z, x))
    outer_left = m(m(x, m(y, z)), x)
    outer_right = m(x, m(m(y, z), x))
    return max(max_relative(middle, outer_left), max_relative(middle, outer_right))


def associator_witness(ctx: SuiteContext) -> CheckValue:
    """随机三元组的结合子相对大小；非结合性要求它远离零"""
    x, y, z = _octonions(ctx, "associator", 3)
    m = multiply_arrays
    return max_relative(m(m(x, y), z), m(x, m(y, z)))


def commutator_witness(ctx: SuiteContext) -> CheckValue:
    return (E[1] * E[2] - E[2] * E[1]).norm()


def basis_associator_witness(ctx: SuiteContext) -> CheckValue:
    return ((E[1] * E[2]) * E[4] - E[1] * (E[2] * E[4])).norm()


def basis_anti_associativity(ctx: SuiteContext) -> CheckValue:
    """(e1 e2) e4 = -e1 (e2 e4)"""
    return ((E[1] * E[2]) * E[4] + E[1] * (E[2] * E[4])).norm()


# 共轭、范数与逆 -------------------------------------------------------------


def conjugation_anti_homomorphism(ctx: SuiteContext) -> CheckValue:
    x, y = _octonions(ctx, "conjugation", 2)
    return max_relative(conjugate_arrays(multiply_arrays(x, y)), multiply_arrays(conjugate_arrays(y), conjugate_arrays(x)))


def conjugation_via_norm(ctx: SuiteContext) -> CheckValue:
    (x,) = _octonions(ctx, "conjugation-norm")
    worst = max(relative_error(conjugate_via_norm(Octonion(p)), Octonion(p * CONJ_SIGNS)) for p in x)
    return float(worst)


def inverse_law(ctx: SuiteContext) -> CheckValue:
    (x,) = _octonions(ctx, "inverse")
    worst = 0.0
    for p in x:
        o = Octonion(p)
        inv = inverse(o)
        worst = max(worst, (o * inv - ONE).norm(), (inv * o - ONE).norm())
    return worst


# e4 演算 --------------------------------------------------------------------


def _rule_check(rule_name: str, vector: bool) -> Callable[[SuiteContext], CheckValue]:
    rules = E4_VECTOR_RULES if vector else E4_QUATERNION_RULES
    rule = rules[rule_name]

    def run(ctx: SuiteContext) -> CheckValue:
        rng = ctx.rng(f"algebra/e4/{'vector' if vector else 'quaternion'}/{rule_name}")
        worst = 0.0
        for _ in range(ctx.count(SAMPLE_KEY)):
            lhs, rhs = rule(random_quaternion(rng), random_quaternion(rng))
            worst = max(worst, relative_error(lhs, rhs))
        return worst

    return run


def e4_basis(ctx: SuiteContext) -> CheckValue:
    failures = [name for name, lhs, rhs in e4_basis_rules() if lhs != rhs]
    return float(len(failures)), ({"failures": failures} if failures else {})


# 投影与对合 -----------------------------------------------------------------


def projections_idempotent(ctx: SuiteContext) -> CheckValue:
    (x,) = _octonions(ctx, "projection")
    worst = 0.0
    for p in x:
        o = Octonion(p)
        for target in Subalgebra:
            once = project(o, target)
            worst = max(worst, float(np.max(np.abs(project(once, target).c - once.c))))
    return worst


def hat_multiplicative(ctx: SuiteContext) -> CheckValue:
    x, y = _octonions(ctx, "hat", 2)
    worst = 0.0
    for p, q in zip(x, y):
        a, b = Octonion(p), Octonion(q)
        lhs = involution(a * b, InvolutionKind.HAT)
        rhs = involution(a, InvolutionKind.HAT) * involution(b, InvolutionKind.HAT)
        worst = max(worst, relative_error(lhs, rhs))
    return worst


def involutions_involutive(ctx: SuiteContext) -> CheckValue:
    (x,) = _octonions(ctx, "involution")
    worst = 0.0
    for p in x:
        o = Octonion(p)
        for kind in InvolutionKind:
            worst = max(worst, float(np.max(np.abs(involution(involution(o, kind), kind).c - o.c))))
    return worst


def quaternionic_projection(ctx: SuiteContext) -> CheckValue:
    """QU(a + b e4) = a"""
    rng = ctx.rng("algebra/quaternionic-projection")
    worst = 0.0
    for _ in range(ctx.count(SAMPLE_KEY)):
        a, b = random_quaternion(rng), random_quaternion(rng)
        worst = max(worst, max_abs(project(from_quaternionic(a, b), Subalgebra.H).c, from_quaternionic(a, Quaternion()).c))
    return worst


def quaternionic_round_trip(ctx: SuiteContext) -> CheckValue:
    (x,) = _octonions(ctx, "round-trip")
    return max(max_abs(from_quaternionic(*quaternionic_form(Octonion(p))).c, p) for p in x)


def checks() -> List[Check]:
    tol = settings.TOL_ALGEBRA
    out = [
        Check("algebra.table.fixture_mismatches", table_fixture, 0.0),
        Check("algebra.composition.octonion", composition_octonion, tol),
        Check("algebra.composition.quaternion", composition_quaternion, tol),
        Check("algebra.composition.complex", composition_complex, tol),
        Check("algebra.associativity.quaternion", quaternion_associativity, tol),
        Check("algebra.alternativity", alternativity, tol),
        Check("algebra.moufang", moufang, tol),
        Check("algebra.witness.commutator_e1_e2", commutator_witness, 0.5, "above"),
        Check("algebra.witness.associator_e1_e2_e4", basis_associator_witness, 0.5, "above"),
        Check("algebra.witness.associator_random", associator_witness, 0.1, "above"),
        Check("algebra.anti_associativity_e1_e2_e4", basis_anti_associativity, tol),
        Check("algebra.conjugation.anti_homomorphism", conjugation_anti_homomorphism, tol),
        Check("algebra.conjugation.via_norm", conjugation_via_norm, tol),
        Check("algebra.inverse", inverse_law, tol),
    ]
    out += [Check(f"algebra.e4.{name}", _rule_check(name, False), tol) for name in E4_QUATERNION_RULES]
    out += [Check(f"algebra.e4_vector.{name}", _rule_check(name, True), tol) for name in E4_VECTOR_RULES]
    out += [
        Check("algebra.e4.basis_rules", e4_basis, 0.0),
        Check("algebra.projection.idempotent", projections_idempotent, tol),
        Check("algebra.involution.hat_multiplicative", hat_multiplicative, tol),
        Check("algebra.involution.involutive", involutions_involutive, tol),
        Check("algebra.quaternionic_form.projection", quaternionic_projection, tol),
        Check("algebra.quaternionic_form.round_trip", quaternionic_round_trip, 0.0),
    ]
    return out
