"""双线性型检查：B_R、B_C、B_H 在采样群元素下的不变性，以及负对照"""

from typing import List, Tuple

import numpy as np

from ..core.config import settings
from ..core.rng import ball_shell
from ..octonion.algebra import Quaternion, from_quaternionic, quaternionic_form, random_octonion, random_unit_quaternion
from ..octonion.forms import (
    FormKind,
    LinearMap8,
    bilinear_form,
    bilinear_form_arrays,
    form_invariance_residual,
    permutation_0_4,
    random_orthogonal,
    random_symplectic,
    random_unitary,
    rho_action,
    symplectic_generator,
    symplectic_invariance_residual,
)
from .base import Check, CheckValue, SuiteContext, max_abs

SAMPLE_KEY = "forms"
MAPS_KEY = "orthogonal_maps"

# 对称群采样的映射个数
SYMPLECTIC_MAPS = 10


def _pairs(ctx: SuiteContext, name: str) -> Tuple[np.ndarray, np.ndarray]:
    n = ctx.count(SAMPLE_KEY)
    pts = ball_shell(ctx.rng(f"forms/{name}"), 2 * n, 8)
    return pts[:n], pts[n:]


def _scaling_map() -> LinearMap8:
    return LinearMap8(np.diag([2.0, 1, 1, 1, 1, 1, 1, 1]))


# 线性映射 -------------------------------------------------------------------


def composition_is_matrix_product(ctx: SuiteContext) -> CheckValue:
    t = random_orthogonal(ctx.seed, "forms/compose-t")
    s = random_symplectic(ctx.seed, "forms/compose-s")
    rng = ctx.rng("forms/compose-x")
    worst = 0.0
    for _ in range(ctx.count(SAMPLE_KEY)):
        x = random_octonion(rng)
        worst = max(worst, max_abs(t(s(x)).c, (t @ s)(x).c))
    return worst


def orthogonal_samplers(ctx: SuiteContext) -> CheckValue:
    maps = [random_orthogonal(ctx.seed, f"forms/orthogonal/{k}") for k in range(ctx.count(MAPS_KEY))]
    gram = max(t.orthogonality_residual() for t in maps)
    det = max(abs(t.det() - 1.0) for t in maps)
    return max(gram, det), {"gram": gram, "det": det}


# 不变性 ---------------------------------------------------------------------


def real_form_orthogonal(ctx: SuiteContext) -> CheckValue:
    """每个 SO(8) 样本配一对 (x, y)"""
    worst = 0.0
    for k in range(ctx.count(MAPS_KEY)):
        t = random_orthogonal(ctx.seed, f"forms/orthogonal/{k}")
        worst = max(worst, form_invariance_residual(t, FormKind.R, 1, ctx.seed, f"forms/orthogonal-pair/{k}"))
    return worst


def quaternionic_form_rho(ctx: SuiteContext) -> CheckValue:
    rng = ctx.rng("forms/rho")
    worst_form, worst_norm = 0.0, 0.0
    for _ in range(ctx.count(SAMPLE_KEY)):
        q, p = random_unit_quaternion(rng), random_unit_quaternion(rng)
        x, y = random_octonion(rng), random_octonion(rng)
        rx, ry = rho_action(q, p, x), rho_action(q, p, y)
        worst_form = max(worst_form, max_abs(bilinear_form(rx, ry, FormKind.H).c, bilinear_form(x, y, FormKind.H).c))
        worst_norm = max(worst_norm, abs(rx.norm() - x.norm()))
    return max(worst_form, worst_norm), {"form": worst_form, "norm": worst_norm}


def quaternion_translations_so4(ctx: SuiteContext) -> CheckValue:
    """单位 q 的 L_q、R_q 保持四元数范数"""
    rng = ctx.rng("forms/so4")
    worst = 0.0
    for _ in range(ctx.count(SAMPLE_KEY)):
        q = random_unit_quaternion(rng)
        a, _ = quaternionic_form(random_octonion(rng))
        worst = max(worst, abs((q * a).norm() - a.norm()), abs((a * q).norm() - a.norm()))
    return worst


def complex_form_real_part(ctx: SuiteContext) -> CheckValue:
    x, y = _pairs(ctx, "re-bc")
    return max_abs(bilinear_form_arrays(x, y, FormKind.C)[:, 0], bilinear_form_arrays(x, y, FormKind.R)[:, 0])


def complex_form_imaginary_part(ctx: SuiteContext) -> CheckValue:
    """IM(B_C(x, y)) = x4 y0 - x5 y1 - x6 y2 - x7 y3 - x0 y4 + x1 y5 + x2 y6 + x3 y7"""
    x, y = _pairs(ctx, "im-bc")
    expected = (
        x[:, 4] * y[:, 0] - x[:, 5] * y[:, 1] - x[:, 6] * y[:, 2] - x[:, 7] * y[:, 3]
        - x[:, 0] * y[:, 4] + x[:, 1] * y[:, 5] + x[:, 2] * y[:, 6] + x[:, 3] * y[:, 7]
    )  # fmt: skip
    return max_abs(bilinear_form_arrays(x, y, FormKind.C)[:, 4], expected)


def symplectic_generator_invariance(ctx: SuiteContext) -> CheckValue:
    return symplectic_invariance_residual(symplectic_generator(), ctx.count(SAMPLE_KEY), ctx.seed)


def random_symplectic_invariance(ctx: SuiteContext) -> CheckValue:
    n = max(1, ctx.count(SAMPLE_KEY) // SYMPLECTIC_MAPS)
    return max(
        symplectic_invariance_residual(random_symplectic(ctx.seed, f"forms/symplectic/{k}"), n, ctx.seed)
        for k in range(SYMPLECTIC_MAPS)
    )


def unitary_invariance(ctx: SuiteContext) -> CheckValue:
    """O(8) 与 Sp(8) 的交同时保持 B_C 的实部与虚部"""
    n = max(1, ctx.count(SAMPLE_KEY) // SYMPLECTIC_MAPS)
    return max(
        form_invariance_residual(random_unitary(ctx.seed, f"forms/unitary/{k}"), FormKind.C, n, ctx.seed, f"forms/unitary-pairs/{k}")
        for k in range(SYMPLECTIC_MAPS)
    )


def permutation_relabels_basis(ctx: SuiteContext) -> CheckValue:
    """交换坐标 0、4 的置换把 1 送到 e4"""
    image = permutation_0_4()(from_quaternionic(Quaternion.real(1.0), Quaternion()))
    return max_abs(image.c, np.eye(8)[4])


# 负对照 ---------------------------------------------------------------------


def scaling_breaks_symplectic(ctx: SuiteContext) -> CheckValue:
    return symplectic_invariance_residual(_scaling_map(), ctx.count(SAMPLE_KEY), ctx.seed)


def scaling_breaks_real_form(ctx: SuiteContext) -> CheckValue:
    return form_invariance_residual(_scaling_map(), FormKind.R, ctx.count(SAMPLE_KEY), ctx.seed, "forms/negative-real")


def checks() -> List[Check]:
    inv = settings.TOL_INVARIANCE
    alg = settings.TOL_ALGEBRA
    return [
        Check("forms.linear_map.composition", composition_is_matrix_product, alg),
        Check("forms.linear_map.permutation_0_4", permutation_relabels_basis, 0.0),
        Check("forms.orthogonal.sampler", orthogonal_samplers, alg),
        Check("forms.b_r.orthogonal_invariance", real_form_orthogonal, inv),
        Check("forms.b_h.rho_invariance", quaternionic_form_rho, alg),
        Check("forms.quaternion.translations_preserve_norm", quaternion_translations_so4, alg),
        Check("forms.b_c.real_part_is_b_r", complex_form_real_part, alg),
        Check("forms.b_c.imaginary_part_formula", complex_form_imaginary_part, alg),
        Check("forms.b_c.symplectic_generator", symplectic_generator_invariance, inv),
        Check("forms.b_c.random_symplectic", random_symplectic_invariance, inv),
        Check("forms.b_c.unitary_invariance", unitary_invariance, inv),
        Check("forms.negative.scaling_symplectic", scaling_breaks_symplectic, 0.1, "above"),
        Check("forms.negative.scaling_real", scaling_breaks_real_form, 0.1, "above"),
    ]
