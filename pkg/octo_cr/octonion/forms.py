"""
双线性型 B_R、B_C、B_H 及其不变性抽样

群成员关系只通过抽样验证（包含方向）：对采样得到的 T 检查 B(Tx, Ty) = B(x, y)，
从不声称刻画整个不变群。
"""

import logging
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ..core.exceptions import DomainError, ValidationError
from ..core.rng import ball_shell, stream
from .algebra import (
    HAT_SIGNS,
    STAR_SIGNS,
    SUBALGEBRA_MASKS,
    Octonion,
    Quaternion,
    Subalgebra,
    conjugate,
    from_quaternionic,
    multiply,
    multiply_arrays,
    conjugate_arrays,
    project,
    quaternionic_form,
)

logger = logging.getLogger(__name__)

FormKind = Subalgebra

UNIT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class LinearMap8:
    """O 上实线性映射的矩阵表示 [T_ij]：T x = sum T_ij x_j e_i"""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=float)
        if m.shape != (8, 8):
            raise ValidationError(f"线性映射需要 8x8 矩阵，实际为 {m.shape}", error_code="bad_shape")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "LinearMap8":
        return cls(np.eye(8))

    def __matmul__(self, other: "LinearMap8") -> "LinearMap8":
        return LinearMap8(self.matrix @ other.matrix)

    def __call__(self, x: Octonion) -> Octonion:
        return apply_linear(self, x)

    @property
    def T(self) -> "LinearMap8":
        return LinearMap8(self.matrix.T)

    def inverse(self) -> "LinearMap8":
        return LinearMap8(np.linalg.inv(self.matrix))

    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    def orthogonality_residual(self) -> float:
        return float(np.max(np.abs(self.matrix.T @ self.matrix - np.eye(8))))


def apply_linear(T: LinearMap8, x: Octonion) -> Octonion:
    return Octonion(T.matrix @ x.c)


def linear_map_of(fn: Callable[[Octonion], Octonion]) -> LinearMap8:
    """任意实线性映射的矩阵：第 j 列为 fn(e_j)"""
    columns = [fn(Octonion.basis(j)).c for j in range(8)]
    return LinearMap8(np.stack(columns, axis=1))


def left_multiplication(a: Octonion) -> LinearMap8:
    return linear_map_of(lambda x: multiply(a, x))


def right_multiplication(a: Octonion) -> LinearMap8:
    return linear_map_of(lambda x: multiply(x, a))


# ---------------------------------------------------------------------------
# 双线性型
# ---------------------------------------------------------------------------


def bilinear_form(x: Octonion, y: Octonion, kind: Union[FormKind, str]) -> Octonion:
    """B_K(x, y) = P_K(x conj(y))，P_K 为 RE / CO / QU"""
    return project(multiply(x, conjugate(y)), FormKind(kind))


def bilinear_form_arrays(x: np.ndarray, y: np.ndarray, kind: Union[FormKind, str]) -> np.ndarray:
    """批量版本，x、y 形状 (n, 8)"""
    kind = FormKind(kind)
    p = multiply_arrays(x, conjugate_arrays(y))
    if kind is FormKind.R:
        partner = conjugate_arrays(p)
    elif kind is FormKind.C:
        partner = p * STAR_SIGNS
    else:
        partner = p * HAT_SIGNS
    return (p + partner) / 2.0 * SUBALGEBRA_MASKS[kind]


def symplectic_part_matrix() -> np.ndarray:
    """IM(B_C(x, y)) = [x]^T Omega [y]"""
    omega = np.zeros((8, 8))
    omega[4, 0] = 1.0
    omega[0, 4] = -1.0
    for k in (1, 2, 3):
        omega[k, 4 + k] = 1.0
        omega[4 + k, k] = -1.0
    return omega


def permutation_0_4() -> LinearMap8:
    """交换坐标 x0 与 x4"""
    p = np.eye(8)
    p[[0, 4]] = p[[4, 0]]
    return LinearMap8(p)


def from_permuted_basis(s: np.ndarray) -> LinearMap8:
    """置换坐标下的矩阵 S -> 原坐标下的 P S P"""
    p = permutation_0_4().matrix
    return LinearMap8(p @ np.asarray(s, dtype=float) @ p)


def standard_symplectic() -> np.ndarray:
    """J = [[0, I4], [-I4, 0]]"""
    j = np.zeros((8, 8))
    j[:4, 4:] = np.eye(4)
    j[4:, :4] = -np.eye(4)
    return j


def symplectic_generator() -> LinearMap8:
    return from_permuted_basis(standard_symplectic())


# ---------------------------------------------------------------------------
# 群元素采样
# ---------------------------------------------------------------------------


def random_orthogonal(seed: int, name: str = "orthogonal") -> LinearMap8:
    """Haar 分布的 SO(8) 元素：高斯矩阵 QR，R 对角线定号，再把行列式校正为 +1"""
    rng = stream(seed, name)
    q, r = np.linalg.qr(rng.standard_normal((8, 8)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return LinearMap8(q)


def random_symplectic(seed: int, name: str = "symplectic") -> LinearMap8:
    """置换坐标下由剪切 [[I,S],[0,I]]、[[I,0],[S,I]] 与 [[A,0],[0,A^-T]] 复合而成"""
    rng = stream(seed, name)
    out = np.eye(8)
    for _ in range(2):
        s = rng.uniform(-0.25, 0.25, (4, 4))
        s = s + s.T
        upper = np.eye(8)
        upper[:4, 4:] = s
        t = rng.uniform(-0.25, 0.25, (4, 4))
        t = t + t.T
        lower = np.eye(8)
        lower[4:, :4] = t
        a = np.eye(4) + 0.3 * rng.uniform(-1.0, 1.0, (4, 4))
        block = np.zeros((8, 8))
        block[:4, :4] = a
        block[4:, 4:] = np.linalg.inv(a).T
        out = upper @ lower @ block @ out
    return from_permuted_basis(out)


def random_unitary(seed: int, name: str = "unitary") -> LinearMap8:
    """U(4) = O(8) ∩ Sp(8) ∩ GL(4, C) 的样本：Haar 酉矩阵 U = A + iB 嵌入为 [[A,-B],[B,A]]"""
    rng = stream(seed, name)
    z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    a, b = q.real, q.imag
    block = np.block([[a, -b], [b, a]])
    return from_permuted_basis(block)


# ---------------------------------------------------------------------------
# rho 作用
# ---------------------------------------------------------------------------


def _require_unit(q: Quaternion, name: str) -> None:
    if abs(q.norm() - 1.0) > UNIT_TOLERANCE:
        raise DomainError(
            f"{name} 不是单位四元数: |{name}| = {q.norm():.17g}",
            error_code="non_unit",
            details={"norm": q.norm()},
        )


def rho_action(q: Quaternion, p: Quaternion, x: Octonion) -> Octonion:
    """rho_{q,p}(a + b e4) = R_q a + (L_p b) e4"""
    _require_unit(q, "q")
    _require_unit(p, "p")
    a, b = quaternionic_form(x)
    return from_quaternionic(a * q, p * b)


def rho_map(q: Quaternion, p: Quaternion) -> LinearMap8:
    _require_unit(q, "q")
    _require_unit(p, "p")
    return linear_map_of(lambda x: rho_action(q, p, x))


# ---------------------------------------------------------------------------
# 不变性残差
# ---------------------------------------------------------------------------


def _samples(samples: int, seed: int, name: str) -> np.ndarray:
    rng = stream(seed, name)
    return ball_shell(rng, 2 * samples, 8)


def form_invariance_residual(
    T: LinearMap8, kind: Union[FormKind, str], samples: int, seed: int, name: str = "form-invariance"
) -> float:
    """max |B(Tx, Ty) - B(x, y)| over samples"""
    pts = _samples(samples, seed, name)
    x, y = pts[:samples], pts[samples:]
    tx = x @ T.matrix.T
    ty = y @ T.matrix.T
    diff = bilinear_form_arrays(tx, ty, kind) - bilinear_form_arrays(x, y, kind)
    return float(np.max(np.linalg.norm(diff, axis=1)))


def symplectic_invariance_residual(T: LinearMap8, samples: int, seed: int) -> float:
    """max |IM(B_C(Tx, Ty)) - IM(B_C(x, y))|"""
    pts = _samples(samples, seed, "symplectic-invariance")
    x, y = pts[:samples], pts[samples:]
    tx = x @ T.matrix.T
    ty = y @ T.matrix.T
    before = bilinear_form_arrays(x, y, FormKind.C)[:, 4]
    after = bilinear_form_arrays(tx, ty, FormKind.C)[:, 4]
    residual = float(np.max(np.abs(after - before)))
    logger.debug(f"辛不变性残差: {residual:.3e}（样本数 {samples}）")
    return residual
