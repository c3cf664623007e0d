"""
八元数代数核心

八元数按四元数形式 x = a + b e4 存储为 8 个连续的双精度实数，
乘积按 Cayley-Dickson 公式
    (a1 + b1 e4)(a2 + b2 e4) = (a1 a2 - conj(b2) b1) + (b1 conj(a2) + b2 a1) e4
计算。所有分量级函数（*_components）只依赖 + - * 运算，因此同一份代码
同时服务于 float、numpy 批量数组和二阶 jet。
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Callable, Dict, List, Sequence, Tuple, Union

import numpy as np

from ..core.exceptions import DomainError, ValidationError
from ..core.rng import ball_shell, unit_directions

logger = logging.getLogger(__name__)

Scalar = Any
Real = Union[int, float]

BASIS_LABELS = ["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"]
CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0])
STAR_SIGNS = np.array([1.0, -1.0, -1.0, -1.0, 1.0, -1.0, -1.0, -1.0])
HAT_SIGNS = np.array([1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0])


class Subalgebra(str, Enum):
    """R = span{1}，C = span{1, e4}，H = span{1, e1, e2, e3}"""

    R = "R"
    C = "C"
    H = "H"


class InvolutionKind(str, Enum):
    STAR = "star"
    HAT = "hat"


SUBALGEBRA_MASKS: Dict[Subalgebra, np.ndarray] = {
    Subalgebra.R: np.array([1.0, 0, 0, 0, 0, 0, 0, 0]),
    Subalgebra.C: np.array([1.0, 0, 0, 0, 1.0, 0, 0, 0]),
    Subalgebra.H: np.array([1.0, 1.0, 1.0, 1.0, 0, 0, 0, 0]),
}


# ---------------------------------------------------------------------------
# 分量级运算
# ---------------------------------------------------------------------------


def complex_components_product(a: Sequence[Scalar], b: Sequence[Scalar]) -> List[Scalar]:
    """实数对的 Cayley-Dickson 倍化（共轭平凡）"""
    return [a[0] * b[0] - b[1] * a[1], b[1] * a[0] + a[1] * b[0]]


def quaternion_components_product(a: Sequence[Scalar], b: Sequence[Scalar]) -> List[Scalar]:
    """Hamilton 积，即复数对的 Cayley-Dickson 倍化展开"""
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]


def quaternion_components_conjugate(a: Sequence[Scalar]) -> List[Scalar]:
    return [a[0], -a[1], -a[2], -a[3]]


def multiply_components(x: Sequence[Scalar], y: Sequence[Scalar]) -> List[Scalar]:
    """八元数积（四元数形式），x、y 为 8 个标量"""
    a1, b1 = x[:4], x[4:]
    a2, b2 = y[:4], y[4:]
    first = quaternion_components_product(a1, a2)
    correction = quaternion_components_product(quaternion_components_conjugate(b2), b1)
    second = quaternion_components_product(b1, quaternion_components_conjugate(a2))
    twist = quaternion_components_product(b2, a1)
    return [p - q for p, q in zip(first, correction)] + [p + q for p, q in zip(second, twist)]


def conjugate_components(x: Sequence[Scalar]) -> List[Scalar]:
    return [x[0]] + [-c for c in x[1:]]


def multiply_arrays(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """批量八元数积，形状 (..., 8)"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = multiply_components([x[..., i] for i in range(8)], [y[..., i] for i in range(8)])
    return np.stack(np.broadcast_arrays(*out), axis=-1)


def conjugate_arrays(x: np.ndarray) -> np.ndarray:
    return np.asarray(x, dtype=float) * CONJ_SIGNS


def quaternion_multiply_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """批量四元数积，形状 (..., 4)"""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = quaternion_components_product([a[..., i] for i in range(4)], [b[..., i] for i in range(4)])
    return np.stack(np.broadcast_arrays(*out), axis=-1)


# ---------------------------------------------------------------------------
# 值类型
# ---------------------------------------------------------------------------


def _frozen(values: Any, size: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    if arr.shape != (size,):
        raise ValidationError(f"{name} 需要 {size} 个实系数，实际为 {arr.size}", error_code="bad_shape")
    arr.setflags(write=False)
    return arr


class Complex:
    """由 {1, e4} 生成的复数子代数中的元素"""

    __slots__ = ("re", "im")

    def __init__(self, re: Real = 0.0, im: Real = 0.0):
        self.re = float(re)
        self.im = float(im)

    def __mul__(self, other: Union["Complex", Real]) -> "Complex":
        if isinstance(other, Complex):
            re, im = complex_components_product([self.re, self.im], [other.re, other.im])
            return Complex(re, im)
        return Complex(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __add__(self, other: "Complex") -> "Complex":
        return Complex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Complex") -> "Complex":
        return Complex(self.re - other.re, self.im - other.im)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Complex) and self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def conjugate(self) -> "Complex":
        return Complex(self.re, -self.im)

    def norm(self) -> float:
        return float(np.hypot(self.re, self.im))

    def to_octonion(self) -> "Octonion":
        return Octonion([self.re, 0, 0, 0, self.im, 0, 0, 0])

    def __repr__(self) -> str:
        return f"Complex({self.re!r}, {self.im!r})"


class Quaternion:
    """{1, e1, e2, e3} 上的四元数"""

    __slots__ = ("c",)

    def __init__(self, coefficients: Any = (0.0, 0.0, 0.0, 0.0)):
        self.c = _frozen(coefficients, 4, "Quaternion")

    @classmethod
    def real(cls, value: Real) -> "Quaternion":
        return cls([value, 0, 0, 0])

    @classmethod
    def basis(cls, index: int) -> "Quaternion":
        c = np.zeros(4)
        c[index] = 1.0
        return cls(c)

    def __mul__(self, other: Union["Quaternion", Real]) -> "Quaternion":
        if isinstance(other, Quaternion):
            return Quaternion(quaternion_components_product(self.c, other.c))
        return Quaternion(self.c * float(other))

    def __rmul__(self, other: Real) -> "Quaternion":
        return Quaternion(self.c * float(other))

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.c + other.c)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.c - other.c)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.c)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Quaternion) and bool(np.array_equal(self.c, other.c))

    def __hash__(self) -> int:
        return hash(self.c.tobytes())

    def conjugate(self) -> "Quaternion":
        return Quaternion(quaternion_components_conjugate(self.c))

    def norm(self) -> float:
        return float(np.linalg.norm(self.c))

    def vector(self) -> "Quaternion":
        return Quaternion([0.0, self.c[1], self.c[2], self.c[3]])

    def to_octonion(self) -> "Octonion":
        return from_quaternionic(self, Quaternion())

    def __repr__(self) -> str:
        return f"Quaternion({list(self.c)!r})"


class Octonion:
    """八元数 x = x0 + x1 e1 + ... + x7 e7，不可变"""

    __slots__ = ("c",)

    def __init__(self, coefficients: Any = (0.0,) * 8):
        self.c = _frozen(coefficients, 8, "Octonion")

    @classmethod
    def real(cls, value: Real) -> "Octonion":
        return cls([value, 0, 0, 0, 0, 0, 0, 0])

    @classmethod
    def basis(cls, index: int) -> "Octonion":
        if not 0 <= index <= 7:
            raise ValidationError(f"基元下标越界: {index}", error_code="bad_index")
        c = np.zeros(8)
        c[index] = 1.0
        return cls(c)

    @property
    def real_part(self) -> float:
        return float(self.c[0])

    def __mul__(self, other: Union["Octonion", Real]) -> "Octonion":
        if isinstance(other, Octonion):
            return multiply(self, other)
        return Octonion(self.c * float(other))

    def __rmul__(self, other: Real) -> "Octonion":
        return Octonion(self.c * float(other))

    def __truediv__(self, other: Real) -> "Octonion":
        return Octonion(self.c / float(other))

    def __add__(self, other: Union["Octonion", Real]) -> "Octonion":
        if isinstance(other, Octonion):
            return Octonion(self.c + other.c)
        return Octonion(self.c + float(other) * SUBALGEBRA_MASKS[Subalgebra.R])

    __radd__ = __add__

    def __sub__(self, other: Union["Octonion", Real]) -> "Octonion":
        if isinstance(other, Octonion):
            return Octonion(self.c - other.c)
        return Octonion(self.c - float(other) * SUBALGEBRA_MASKS[Subalgebra.R])

    def __neg__(self) -> "Octonion":
        return Octonion(-self.c)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Octonion) and bool(np.array_equal(self.c, other.c))

    def __hash__(self) -> int:
        return hash(self.c.tobytes())

    def conjugate(self) -> "Octonion":
        return conjugate(self)

    def norm(self) -> float:
        return norm(self)

    def inverse(self) -> "Octonion":
        return inverse(self)

    def __repr__(self) -> str:
        terms = [f"{v:+.6g}{'' if i == 0 else BASIS_LABELS[i]}" for i, v in enumerate(self.c) if v != 0]
        return f"Octonion({' '.join(terms) or '0'})"


E = [Octonion.basis(i) for i in range(8)]
ONE = E[0]


# ---------------------------------------------------------------------------
# 基本运算
# ---------------------------------------------------------------------------


def multiply(x: Octonion, y: Octonion) -> Octonion:
    return Octonion(multiply_components(list(x.c), list(y.c)))


def conjugate(x: Octonion) -> Octonion:
    return Octonion(x.c * CONJ_SIGNS)


def norm(x: Octonion) -> float:
    return float(np.linalg.norm(x.c))


def inverse(x: Octonion) -> Octonion:
    """x^{-1} = conj(x) / |x|^2"""
    n2 = float(np.dot(x.c, x.c))
    if n2 == 0.0:
        raise DomainError("零元素不可逆 (not invertible)", error_code="not_invertible")
    return Octonion(x.c * CONJ_SIGNS / n2)


def conjugate_via_norm(x: Octonion) -> Octonion:
    """conj(x) = |x+1|^2 - |x|^2 - 1 - x，其中实数标量视为 e0 的倍数"""
    scalar = norm(x + 1.0) ** 2 - norm(x) ** 2 - 1.0
    return Octonion.real(scalar) - x


def quaternionic_form(x: Octonion) -> Tuple[Quaternion, Quaternion]:
    """x = a + b e4，a = (x0..x3)，b = (x4..x7)"""
    return Quaternion(x.c[:4]), Quaternion(x.c[4:])


def from_quaternionic(a: Quaternion, b: Quaternion) -> Octonion:
    return Octonion(np.concatenate([a.c, b.c]))


def involution(x: Octonion, kind: Union[InvolutionKind, str]) -> Octonion:
    """star: a + b e4 -> conj(a) + conj(b) e4；hat: a + b e4 -> a - b e4"""
    kind = InvolutionKind(kind)
    signs = STAR_SIGNS if kind is InvolutionKind.STAR else HAT_SIGNS
    return Octonion(x.c * signs)


def project(x: Octonion, target: Union[Subalgebra, str]) -> Octonion:
    """RE(x) = (x + conj x)/2，CO(x) = (x + x*)/2，QU(x) = (x + hat x)/2"""
    target = Subalgebra(target)
    if target is Subalgebra.R:
        partner = conjugate(x)
    elif target is Subalgebra.C:
        partner = involution(x, InvolutionKind.STAR)
    else:
        partner = involution(x, InvolutionKind.HAT)
    # 子代数之外的系数精确为零
    return Octonion((x.c + partner.c) / 2.0 * SUBALGEBRA_MASKS[target])


# ---------------------------------------------------------------------------
# 结构常数
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureTable:
    """e_i e_j = signs[i, j] * e_{indices[i, j]}"""

    signs: np.ndarray
    indices: np.ndarray

    def entry(self, i: int, j: int) -> Tuple[int, int]:
        return int(self.signs[i, j]), int(self.indices[i, j])

    def label(self, i: int, j: int) -> str:
        sign, index = self.entry(i, j)
        return ("-" if sign < 0 else "") + BASIS_LABELS[index]

    def tensor(self) -> np.ndarray:
        """M[i, j, k]：e_i e_j 在 e_k 上的系数"""
        m = np.zeros((8, 8, 8))
        for i in range(8):
            for j in range(8):
                m[i, j, self.indices[i, j]] = self.signs[i, j]
        return m


@lru_cache()
def structure_table() -> StructureTable:
    """由基元乘积推导出的 64 个带符号结构常数"""
    signs = np.zeros((8, 8), dtype=int)
    indices = np.zeros((8, 8), dtype=int)
    for i in range(8):
        for j in range(8):
            product = multiply(E[i], E[j]).c
            k = int(np.flatnonzero(product)[0])
            signs[i, j] = int(product[k])
            indices[i, j] = k
    signs.setflags(write=False)
    indices.setflags(write=False)
    logger.debug("结构常数表已生成")
    return StructureTable(signs=signs, indices=indices)


@lru_cache()
def structure_tensor() -> np.ndarray:
    m = structure_table().tensor()
    m.setflags(write=False)
    return m


def parse_basis_label(label: str) -> Tuple[int, int]:
    """'-e3' -> (-1, 3)，'1' -> (1, 0)，'-1' -> (-1, 0)"""
    text = label.strip().replace("−", "-").replace("_", "")
    sign = -1 if text.startswith("-") else 1
    text = text.lstrip("+-")
    if text == "1":
        return sign, 0
    if len(text) == 2 and text[0] == "e" and text[1] in "1234567":
        return sign, int(text[1])
    raise ValidationError(f"无法解析基元标签: {label!r}", error_code="bad_label")


# ---------------------------------------------------------------------------
# e4 演算
# ---------------------------------------------------------------------------


def _q(a: Quaternion) -> Octonion:
    return from_quaternionic(a, Quaternion())


def _qe4(a: Quaternion) -> Octonion:
    """a e4"""
    return from_quaternionic(Quaternion(), a)


RulePair = Tuple[Octonion, Octonion]

E4_QUATERNION_RULES: Dict[str, Callable[[Quaternion, Quaternion], RulePair]] = {
    "e4 a = conj(a) e4": lambda a, b: (E[4] * _q(a), _qe4(a.conjugate())),
    "e4 (a e4) = -conj(a)": lambda a, b: (E[4] * _qe4(a), -_q(a.conjugate())),
    "(a e4) e4 = -a": lambda a, b: (_qe4(a) * E[4], -_q(a)),
    "a (b e4) = (b a) e4": lambda a, b: (_q(a) * _qe4(b), _qe4(b * a)),
    "(a e4) b = (a conj(b)) e4": lambda a, b: (_qe4(a) * _q(b), _qe4(a * b.conjugate())),
    "(a e4)(b e4) = -conj(b) a": lambda a, b: (_qe4(a) * _qe4(b), -_q(b.conjugate() * a)),
}

E4_VECTOR_RULES: Dict[str, Callable[[Quaternion, Quaternion], RulePair]] = {
    "e4 a = -a e4": lambda a, b: (E[4] * _q(a.vector()), -_qe4(a.vector())),
    "e4 (a e4) = a": lambda a, b: (E[4] * _qe4(a.vector()), _q(a.vector())),
    "(a e4) e4 = -a": lambda a, b: (_qe4(a.vector()) * E[4], -_q(a.vector())),
    "a (b e4) = (b a) e4": lambda a, b: (
        _q(a.vector()) * _qe4(b.vector()),
        _qe4(b.vector() * a.vector()),
    ),
    "(a e4) b = -(a b) e4": lambda a, b: (
        _qe4(a.vector()) * _q(b.vector()),
        -_qe4(a.vector() * b.vector()),
    ),
    "(a e4)(b e4) = b a": lambda a, b: (
        _qe4(a.vector()) * _qe4(b.vector()),
        _q(b.vector() * a.vector()),
    ),
}


def e4_basis_rules() -> List[Tuple[str, Octonion, Octonion]]:
    """i, j in {1,2,3} 的三条基元规则，返回 (名称, 左边, 右边)"""
    out = []
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            out.append((f"e{i}(e{j}e4) = (e{j}e{i})e4", E[i] * (E[j] * E[4]), (E[j] * E[i]) * E[4]))
            out.append((f"(e{i}e4)e{j} = -(e{i}e{j})e4", (E[i] * E[4]) * E[j], -((E[i] * E[j]) * E[4])))
            out.append((f"(e{i}e4)(e{j}e4) = e{j}e{i}", (E[i] * E[4]) * (E[j] * E[4]), E[j] * E[i]))
    return out


# ---------------------------------------------------------------------------
# 随机样本
# ---------------------------------------------------------------------------


def random_octonion(rng: np.random.Generator, low: float = 0.5, high: float = 2.0) -> Octonion:
    return Octonion(ball_shell(rng, 1, 8, low, high)[0])


def random_quaternion(rng: np.random.Generator, low: float = 0.5, high: float = 2.0) -> Quaternion:
    return Quaternion(ball_shell(rng, 1, 4, low, high)[0])


def random_unit_quaternion(rng: np.random.Generator) -> Quaternion:
    return Quaternion(unit_directions(rng, 1, 4)[0])


def relative_error(lhs: Union[Octonion, Quaternion], rhs: Union[Octonion, Quaternion]) -> float:
    scale = max(float(np.linalg.norm(lhs.c)), float(np.linalg.norm(rhs.c)), 1e-300)
    return float(np.linalg.norm(lhs.c - rhs.c)) / scale
