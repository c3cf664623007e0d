"""
Cauchy-Riemann 型微分算子

所有算子都从同一份 OctonionJet2 数据组装：
    left CR   sum_{i,j} (e_i e_j) d_i f_j
    right CR  sum_{i,j} (e_j e_i) d_i f_j
二阶算子在 Hessian 上按相同的结构张量展开，有限差分只作交叉校验。
"""

import logging
from typing import Any, Optional, Tuple

import numpy as np

from ..core.config import settings
from .algebra import CONJ_SIGNS, Octonion, structure_tensor
from .fields import OctonionField
from .jets import OctonionJet2

logger = logging.getLogger(__name__)

# 不含 e0 的虚部方向
_VECTOR_MASK = np.array([0.0, 1, 1, 1, 1, 1, 1, 1])


def evaluate_jet(f: OctonionField, x: Any) -> OctonionJet2:
    return f.jet(x)


# ---------------------------------------------------------------------------
# 一阶算子（jet 版本）
# ---------------------------------------------------------------------------


def _left(grad: np.ndarray, weights: Optional[np.ndarray] = None) -> np.ndarray:
    """sum_{i,j} w_i (e_i e_j) grad[j, i]"""
    g = grad if weights is None else grad * weights[None, :]
    return np.einsum("ijk,ji->k", structure_tensor(), g)


def _right(grad: np.ndarray, weights: Optional[np.ndarray] = None) -> np.ndarray:
    """sum_{i,j} w_i (e_j e_i) grad[j, i]"""
    g = grad if weights is None else grad * weights[None, :]
    return np.einsum("jik,ji->k", structure_tensor(), g)


def cauchy_riemann_left_from_jet(jet: OctonionJet2) -> Octonion:
    return Octonion(_left(jet.grad))


def cauchy_riemann_right_from_jet(jet: OctonionJet2) -> Octonion:
    return Octonion(_right(jet.grad))


def dirac_from_jet(jet: OctonionJet2) -> Octonion:
    return Octonion(_left(jet.grad, _VECTOR_MASK))


def partial_x0_from_jet(jet: OctonionJet2) -> Octonion:
    return Octonion(jet.grad[:, 0])


def conjugate_cr_from_jet(jet: OctonionJet2) -> Octonion:
    """d_xbar f = d_x0 f - d_x f 的向量部分"""
    return Octonion(_left(jet.grad, CONJ_SIGNS))


def laplacian_from_jet(jet: OctonionJet2) -> Octonion:
    return Octonion(np.einsum("jaa->j", jet.hess))


# ---------------------------------------------------------------------------
# 二阶算子
# ---------------------------------------------------------------------------


def _left_derivatives(hess: np.ndarray) -> np.ndarray:
    """D[k] = d_k (d_x f)，形状 (8, 8)"""
    return np.einsum("ijm,jik->km", structure_tensor(), hess)


def _right_derivatives(hess: np.ndarray) -> np.ndarray:
    """D[k] = d_k (f d_x)"""
    return np.einsum("jim,jik->km", structure_tensor(), hess)


def factorization_residual_from_jet(jet: OctonionJet2) -> Octonion:
    """d_xbar (d_x f) - Laplace f"""
    d = _left_derivatives(jet.hess)
    outer = np.einsum("km,kmn->n", d * CONJ_SIGNS[:, None], structure_tensor())
    return Octonion(outer - np.einsum("jaa->j", jet.hess))


def inframonogenic_from_jet(jet: OctonionJet2) -> Octonion:
    """(d_x f) d_x：先左 CR，再右 CR"""
    d = _left_derivatives(jet.hess)
    return Octonion(np.einsum("km,mkn->n", d, structure_tensor()))


def right_then_left_from_jet(jet: OctonionJet2) -> Octonion:
    """d_x (f d_x)"""
    d = _right_derivatives(jet.hess)
    return Octonion(np.einsum("km,kmn->n", d, structure_tensor()))


# ---------------------------------------------------------------------------
# 场接口
# ---------------------------------------------------------------------------


def cauchy_riemann_left(f: OctonionField, x: Any) -> Octonion:
    return cauchy_riemann_left_from_jet(f.jet(x))


def cauchy_riemann_right(f: OctonionField, x: Any) -> Octonion:
    return cauchy_riemann_right_from_jet(f.jet(x))


def dirac(f: OctonionField, x: Any) -> Octonion:
    return dirac_from_jet(f.jet(x))


def partial_x0(f: OctonionField, x: Any) -> Octonion:
    return partial_x0_from_jet(f.jet(x))


def conjugate_cr(f: OctonionField, x: Any) -> Octonion:
    return conjugate_cr_from_jet(f.jet(x))


def laplacian(f: OctonionField, x: Any) -> Octonion:
    return laplacian_from_jet(f.jet(x))


def factorization_residual(f: OctonionField, x: Any) -> Octonion:
    return factorization_residual_from_jet(f.jet(x))


def inframonogenic_residual(f: OctonionField, x: Any) -> Octonion:
    return inframonogenic_from_jet(f.jet(x))


def right_then_left_residual(f: OctonionField, x: Any) -> Octonion:
    return right_then_left_from_jet(f.jet(x))


def bracketing_gap(f: OctonionField, x: Any) -> float:
    """|(d_x f) d_x - d_x (f d_x)|，两种括号顺序的差"""
    jet = f.jet(x)
    return (inframonogenic_from_jet(jet) - right_then_left_from_jet(jet)).norm()


def recombination_residual(f: OctonionField, x: Any) -> float:
    """d_x = d_x0 + Dirac 与 d_xbar = d_x0 - Dirac 的重组误差"""
    jet = f.jet(x)
    d0, dv = partial_x0_from_jet(jet), dirac_from_jet(jet)
    left = (cauchy_riemann_left_from_jet(jet) - (d0 + dv)).norm()
    conj = (conjugate_cr_from_jet(jet) - (d0 - dv)).norm()
    return max(left, conj)


# ---------------------------------------------------------------------------
# 有限差分校验
# ---------------------------------------------------------------------------


def finite_difference_gradient(f: OctonionField, x: Any, step: Optional[float] = None) -> np.ndarray:
    """中心差分 grad[j, i] = d_i f_j"""
    h = settings.FD_STEP if step is None else step
    x = np.asarray(x, dtype=float).reshape(8)
    offsets = np.eye(8) * h
    plus = f.evaluate(x + offsets)
    minus = f.evaluate(x - offsets)
    return ((plus - minus) / (2.0 * h)).T


def finite_difference_hessian(f: OctonionField, x: Any, step: Optional[float] = None) -> np.ndarray:
    """中心差分 hess[j, a, b]"""
    h = settings.FD_STEP if step is None else step
    x = np.asarray(x, dtype=float).reshape(8)
    eye = np.eye(8) * h
    pp = x + eye[:, None, :] + eye[None, :, :]
    pm = x + eye[:, None, :] - eye[None, :, :]
    mp = x - eye[:, None, :] + eye[None, :, :]
    mm = x - eye[:, None, :] - eye[None, :, :]
    mixed = (f.evaluate(pp) - f.evaluate(pm) - f.evaluate(mp) + f.evaluate(mm)) / (4.0 * h * h)
    # 对角线用三点公式，避免 2h 步长
    center = f.evaluate(x)
    diagonal = (f.evaluate(x + eye) - 2.0 * center + f.evaluate(x - eye)) / (h * h)
    idx = np.arange(8)
    mixed[idx, idx] = diagonal
    return np.transpose(mixed, (2, 0, 1))


def finite_difference_deviation(f: OctonionField, x: Any, step: Optional[float] = None) -> Tuple[float, float]:
    """(一阶, 二阶) jet 导数与有限差分的最大绝对偏差"""
    jet = f.jet(x)
    first = float(np.max(np.abs(jet.grad - finite_difference_gradient(f, x, step))))
    second = float(np.max(np.abs(jet.hess - finite_difference_hessian(f, x, step))))
    logger.debug(f"{f.name} 有限差分偏差: 一阶 {first:.2e}, 二阶 {second:.2e}")
    return first, second


def jet_value_deviation(f: OctonionField, x: Any) -> float:
    """jet 的值切片与逐点求值之差"""
    return float(np.max(np.abs(f.jet(x).value - f.evaluate(np.asarray(x, dtype=float)))))
