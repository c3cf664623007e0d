"""
显式单演函数族

- Fueter 型线性场 x_i - x0 e_i
- 由全纯种子 (alpha, beta) 驱动的双轴对称解
      f = e^d [(alpha sin 2c + beta cos 2c) + (-alpha cos 2c + beta sin 2c) e4]
  其中 u0 = x0, v0 = x4, a = |u|^2, b = |v|^2, c = <u, v>, d = a - b
- 以区域外一点为极点的 Cauchy 核
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np

from ..core.exceptions import DomainError, ValidationError
from . import jets
from .algebra import Octonion, Quaternion, from_quaternionic, quaternionic_form
from .fields import CauchyKernelField, Constant, OctonionField
from .jets import Jet2
from .operators import cauchy_riemann_left

logger = logging.getLogger(__name__)

Scalar = Any
ScalarFunction = Callable[[Scalar, Scalar], Scalar]

# 可行性检查 c^2 <= ab 的舍入容差
FEASIBILITY_TOLERANCE = 1e-12


# ---------------------------------------------------------------------------
# Fueter 型场
# ---------------------------------------------------------------------------


class FueterField(OctonionField):
    """x -> x_i - x0 e_i"""

    def __init__(self, index: int):
        self.index = index
        self.name = f"fueter-{index}"

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        out: List[Scalar] = [x[self.index]] + [0.0] * 7
        out[self.index] = -x[0]
        return out


def fueter_field(i: int) -> OctonionField:
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= 7:
        raise ValidationError(f"Fueter 场下标必须在 1..7 内: {i!r}", error_code="bad_index")
    return FueterField(int(i))


# ---------------------------------------------------------------------------
# 全纯种子
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HolomorphicSeed:
    """alpha + i beta 全纯；alpha、beta 接受 float / ndarray / Jet2"""

    name: str
    alpha: ScalarFunction
    beta: ScalarFunction


SEEDS: Dict[str, HolomorphicSeed] = {
    "const": HolomorphicSeed("const", lambda u, v: 1.0, lambda u, v: 0.0),
    "z": HolomorphicSeed("z", lambda u, v: u, lambda u, v: v),
    "z2": HolomorphicSeed("z2", lambda u, v: u * u - v * v, lambda u, v: 2.0 * (u * v)),
    "exp": HolomorphicSeed(
        "exp",
        lambda u, v: jets.exp(u) * jets.cos(v),
        lambda u, v: jets.exp(u) * jets.sin(v),
    ),
}


def get_seed(name: str) -> HolomorphicSeed:
    try:
        return SEEDS[name]
    except KeyError as e:
        raise ValidationError(f"未知的种子: {name}，可选 {sorted(SEEDS)}", error_code="bad_seed") from e


def seed_residual(seed: HolomorphicSeed, points: Any) -> float:
    """平面 CR 残差 max(|d_u alpha - d_v beta|, |d_v alpha + d_u beta|)，points 形状 (n, 2)"""
    worst = 0.0
    for u0, v0 in np.asarray(points, dtype=float).reshape(-1, 2):
        u, v = Jet2.variable(u0, 0, 2), Jet2.variable(v0, 1, 2)
        a = jets.as_jet(seed.alpha(u, v), 2)
        b = jets.as_jet(seed.beta(u, v), 2)
        worst = max(worst, abs(a.grad[0] - b.grad[1]), abs(a.grad[1] + b.grad[0]))
    return float(worst)


# ---------------------------------------------------------------------------
# 双轴坐标
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BiaxialCoordinates:
    u0: float
    v0: float
    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0:
            raise DomainError(f"a、b 必须非负: a={self.a}, b={self.b}", error_code="infeasible_coordinates")
        if self.c * self.c > self.a * self.b + FEASIBILITY_TOLERANCE * max(1.0, self.a * self.b):
            raise DomainError(
                f"违反 Cauchy-Schwarz: c^2={self.c * self.c} > ab={self.a * self.b}",
                error_code="infeasible_coordinates",
            )

    @property
    def d(self) -> float:
        return self.a - self.b

    @classmethod
    def from_point(cls, x: Any) -> "BiaxialCoordinates":
        return cls(*biaxial_invariants(x))

    def as_tuple(self) -> Tuple[float, float, float, float, float]:
        return self.u0, self.v0, self.a, self.b, self.c


def biaxial_invariants(x: Any) -> Tuple[float, float, float, float, float]:
    """(u0, v0, |u|^2, |v|^2, <u, v>)"""
    p = np.asarray(x.c if isinstance(x, Octonion) else x, dtype=float).reshape(8)
    u, v = p[1:4], p[5:8]
    return float(p[0]), float(p[4]), float(u @ u), float(v @ v), float(u @ v)


def rotate_biaxial(x: Octonion, s: Quaternion) -> Octonion:
    """(u, v) -> (u0 + conj(s) u s, v0 + conj(s) v s)，s 为单位四元数"""
    if abs(s.norm() - 1.0) > FEASIBILITY_TOLERANCE:
        raise DomainError(f"旋转需要单位四元数: |s| = {s.norm():.17g}", error_code="non_unit")
    u, v = quaternionic_form(x)
    sc = s.conjugate()
    ru = Quaternion.real(u.c[0]) + sc * u.vector() * s
    rv = Quaternion.real(v.c[0]) + sc * v.vector() * s
    return from_quaternionic(ru, rv)


# ---------------------------------------------------------------------------
# 双轴解
# ---------------------------------------------------------------------------

DISPLAY_VARIANTS = ("printed", "h_negated", "alpha_negated", "beta_negated")


def _gh(
    seed: HolomorphicSeed, u0: Scalar, v0: Scalar, a: Scalar, b: Scalar, c: Scalar, variant: str = "printed"
) -> Tuple[Scalar, Scalar]:
    alpha, beta = seed.alpha(u0, v0), seed.beta(u0, v0)
    if variant == "alpha_negated":
        alpha = -alpha
    elif variant == "beta_negated":
        beta = -beta
    ed = jets.exp(a - b)
    s2, c2 = jets.sin(2.0 * c), jets.cos(2.0 * c)
    g = ed * (alpha * s2 + beta * c2)
    h = ed * (beta * s2 - alpha * c2)
    if variant == "h_negated":
        h = -h
    return g, h


class BiaxialField(OctonionField):
    """f = g + h e4，g、h 为实值"""

    def __init__(self, seed: HolomorphicSeed, variant: str = "printed"):
        if variant not in DISPLAY_VARIANTS:
            raise ValidationError(f"未知的符号变体: {variant}", error_code="bad_variant")
        self.seed, self.variant = seed, variant
        self.name = f"biaxial-{seed.name}" + ("" if variant == "printed" else f"-{variant}")

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        a = x[1] * x[1] + x[2] * x[2] + x[3] * x[3]
        b = x[5] * x[5] + x[6] * x[6] + x[7] * x[7]
        c = x[1] * x[5] + x[2] * x[6] + x[3] * x[7]
        g, h = _gh(self.seed, x[0], x[4], a, b, c, self.variant)
        return [g, 0.0, 0.0, 0.0, h, 0.0, 0.0, 0.0]


def biaxial_field(seed: HolomorphicSeed, variant: str = "printed") -> OctonionField:
    return BiaxialField(seed, variant)


def diagnose_display_signs(seed: HolomorphicSeed, points: Any) -> Dict[str, float]:
    """每个符号变体在样本点上的最大左 CR 残差"""
    pts = np.asarray(points, dtype=float).reshape(-1, 8)
    out: Dict[str, float] = {}
    for variant in DISPLAY_VARIANTS:
        f = BiaxialField(seed, variant)
        out[variant] = max(cauchy_riemann_left(f, x).norm() for x in pts)
    logger.debug(f"种子 {seed.name} 的符号诊断: {out}")
    return out


def _reduced_jets(seed: HolomorphicSeed, coords: BiaxialCoordinates) -> Tuple[Jet2, Jet2]:
    """以 (u0, v0, a, b, c) 为 5 个独立变量的 g、h"""
    u0, v0, a, b, c = jets.variables(coords.as_tuple())
    g, h = _gh(seed, u0, v0, a, b, c)
    return jets.as_jet(g, 5), jets.as_jet(h, 5)


_U0, _V0, _A, _B, _C = range(5)


def reduced_system_residual(seed: HolomorphicSeed, coords: BiaxialCoordinates) -> np.ndarray:
    """约化后的六个方程

    2 g_a - h_c, g_c - 2 h_b, 2 h_a + g_c, h_c + 2 g_b, g_u0 - h_v0, h_u0 + g_v0
    """
    g, h = _reduced_jets(seed, coords)
    dg, dh = g.grad, h.grad
    return np.array(
        [
            2.0 * dg[_A] - dh[_C],
            dg[_C] - 2.0 * dh[_B],
            2.0 * dh[_A] + dg[_C],
            dh[_C] + 2.0 * dg[_B],
            dg[_U0] - dh[_V0],
            dh[_U0] + dg[_V0],
        ]
    )


def transport_residual(seed: HolomorphicSeed, coords: BiaxialCoordinates) -> np.ndarray:
    """(g_a + g_b, h_a + h_b)：g、h 只通过 d = a - b 依赖 a、b"""
    g, h = _reduced_jets(seed, coords)
    return np.array([g.grad[_A] + g.grad[_B], h.grad[_A] + h.grad[_B]])


def pq_residual(c: float, alpha: float, beta: float) -> np.ndarray:
    """(2q - p_c, 2p + q_c)，p = -alpha cos 2c + beta sin 2c，q = alpha sin 2c + beta cos 2c"""
    cj = Jet2.variable(c, 0, 1)
    s2, c2 = (2.0 * cj).sin(), (2.0 * cj).cos()
    p = c2 * (-alpha) + s2 * beta
    q = s2 * alpha + c2 * beta
    return np.array([2.0 * q.value - p.grad[0], 2.0 * p.value + q.grad[0]])


# ---------------------------------------------------------------------------
# 单演样例集合
# ---------------------------------------------------------------------------

# 极点在求值区域 |x| <= 1.5 之外
KERNEL_POLE = Octonion([3.0, 0, 0, 0, 0, 0, 0, 0])


def cauchy_kernel_field(pole: Octonion = KERNEL_POLE) -> OctonionField:
    return CauchyKernelField(pole)


def monogenic_fixtures() -> List[OctonionField]:
    """按固定顺序排列的左单演样例"""
    fixtures: List[OctonionField] = [Constant(Octonion([1.0, -2.0, 0.5, 0, 3.0, 0, -1.0, 0.25]))]
    fixtures += [fueter_field(i) for i in range(1, 8)]
    fixtures += [biaxial_field(SEEDS[name]) for name in ("const", "z", "z2", "exp")]
    fixtures.append(cauchy_kernel_field())
    return fixtures
