"""
八元数值场 f: R^8 -> O

场是由常数、坐标、八元数运算、实部上的 exp/sin/cos/幂 以及投影/共轭包装组成的表达式树。
同一棵树既可以在 (..., 8) 的 numpy 点阵上批量求值，也可以在二阶 jet 上求值；
节点不持有可变缓存，可在线程间共享。
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, List, Optional, Sequence, Union

import numpy as np

from ..core.exceptions import SingularityError, ValidationError
from . import jets
from .algebra import (
    CONJ_SIGNS,
    HAT_SIGNS,
    STAR_SIGNS,
    SUBALGEBRA_MASKS,
    InvolutionKind,
    Octonion,
    Subalgebra,
    multiply_components,
)
from .jets import Jet2, OctonionJet2

logger = logging.getLogger(__name__)

Scalar = Any
Number = Union[int, float]

# 与奇点的距离平方低于该值视为落在奇点上
POLE_RADIUS_SQUARED = 1e-24


def _is_zero(value: Scalar) -> bool:
    return isinstance(value, (int, float)) and value == 0


class OctonionField(ABC):
    """八元数值场的基类"""

    name: str = "field"

    @abstractmethod
    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        """8 个坐标标量 -> 8 个分量标量（float、ndarray 或 Jet2）"""

    # 求值 -------------------------------------------------------------------

    def evaluate(self, points: Any) -> np.ndarray:
        """在形状 (..., 8) 的点阵上批量求值，返回 (..., 8)"""
        arr = np.asarray(points, dtype=float)
        if arr.shape[-1] != 8:
            raise ValidationError(f"点的最后一维必须为 8，实际为 {arr.shape}", error_code="bad_shape")
        shape = arr.shape[:-1]
        comps = self.components([arr[..., i] for i in range(8)])
        return np.stack([np.broadcast_to(np.asarray(c, dtype=float), shape) for c in comps], axis=-1)

    def at(self, point: Any) -> Octonion:
        return Octonion(self.evaluate(np.asarray(point, dtype=float).reshape(8)))

    def jet(self, point: Any) -> OctonionJet2:
        xs = jets.variables(np.asarray(point, dtype=float).reshape(8))
        return OctonionJet2.from_components(self.components(xs))

    # 组合 -------------------------------------------------------------------

    def __add__(self, other: "OctonionField") -> "OctonionField":
        return Sum(self, as_field(other))

    def __radd__(self, other: Any) -> "OctonionField":
        return Sum(as_field(other), self)

    def __sub__(self, other: "OctonionField") -> "OctonionField":
        return Difference(self, as_field(other))

    def __rsub__(self, other: Any) -> "OctonionField":
        return Difference(as_field(other), self)

    def __neg__(self) -> "OctonionField":
        return Scaled(self, -1.0)

    def __mul__(self, other: Any) -> "OctonionField":
        if isinstance(other, (int, float)):
            return Scaled(self, float(other))
        return Product(self, as_field(other))

    def __rmul__(self, other: Any) -> "OctonionField":
        if isinstance(other, (int, float)):
            return Scaled(self, float(other))
        return Product(as_field(other), self)

    def conjugate(self) -> "OctonionField":
        return Signed(self, CONJ_SIGNS, f"conj({self.name})")

    def project(self, target: Union[Subalgebra, str]) -> "OctonionField":
        target = Subalgebra(target)
        return Signed(self, SUBALGEBRA_MASKS[target], f"{target.value}-part({self.name})")

    def involution(self, kind: Union[InvolutionKind, str]) -> "OctonionField":
        kind = InvolutionKind(kind)
        signs = STAR_SIGNS if kind is InvolutionKind.STAR else HAT_SIGNS
        return Signed(self, signs, f"{kind.value}({self.name})")

    def translated(self, offset: Any) -> "OctonionField":
        return Translated(self, offset)

    def exp(self) -> "OctonionField":
        return RealFunction(self, "exp")

    def sin(self) -> "OctonionField":
        return RealFunction(self, "sin")

    def cos(self) -> "OctonionField":
        return RealFunction(self, "cos")

    def power(self, exponent: Number) -> "OctonionField":
        return RealFunction(self, "power", exponent)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


def as_field(value: Any) -> OctonionField:
    if isinstance(value, OctonionField):
        return value
    if isinstance(value, Octonion):
        return Constant(value)
    if isinstance(value, (int, float)):
        return Constant(Octonion.real(value))
    raise ValidationError(f"无法转换为场: {value!r}", error_code="bad_field")


class Constant(OctonionField):
    def __init__(self, value: Octonion):
        self.value = value
        self.name = repr(value)

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        return [float(c) for c in self.value.c]


class Coordinate(OctonionField):
    """实值场 x -> x_i"""

    def __init__(self, index: int):
        if not 0 <= index <= 7:
            raise ValidationError(f"坐标下标越界: {index}", error_code="bad_index")
        self.index = index
        self.name = f"x{index}"

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        return [x[self.index]] + [0.0] * 7


class Identity(OctonionField):
    """f(x) = x"""

    name = "x"

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        return list(x)


class Sum(OctonionField):
    def __init__(self, left: OctonionField, right: OctonionField):
        self.left, self.right = left, right
        self.name = f"({left.name} + {right.name})"

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        return [_add(a, b) for a, b in zip(self.left.components(x), self.right.components(x))]


class Difference(OctonionField):
    def __init__(self, left: OctonionField, right: OctonionField):
        self.left, self.right = left, right
        self.name = f"({left.name} - {right.name})"

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        return [_add(a, _neg(b)) for a, b in zip(self.left.components(x), self.right.components(x))]


class Product(OctonionField):
    """逐点八元数积 f(x) g(x)，括号顺序即乘积顺序"""

    def __init__(self, left: OctonionField, right: OctonionField):
        self.left, self.right = left, right
        self.name = f"({left.name} * {right.name})"

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        return multiply_components(self.left.components(x), self.right.components(x))


class Scaled(OctonionField):
    def __init__(self, inner: OctonionField, factor: float):
        self.inner, self.factor = inner, float(factor)
        self.name = f"{self.factor:g}*{inner.name}"

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        return [c * self.factor for c in self.inner.components(x)]


class Signed(OctonionField):
    """分量乘以固定的符号/掩码：共轭、对合、投影"""

    def __init__(self, inner: OctonionField, signs: np.ndarray, name: str):
        self.inner = inner
        self.signs = [float(s) for s in signs]
        self.name = name

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        out: List[Scalar] = []
        for c, s in zip(self.inner.components(x), self.signs):
            out.append(0.0 if s == 0.0 else (c if s == 1.0 else -c))
        return out


class Translated(OctonionField):
    """x -> f(x + offset)"""

    def __init__(self, inner: OctonionField, offset: Any):
        self.inner = inner
        self.offset = [float(v) for v in np.asarray(offset, dtype=float).reshape(8)]
        self.name = f"{inner.name}(x + c)"

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        return self.inner.components([xi + oi for xi, oi in zip(x, self.offset)])


class RealFunction(OctonionField):
    """实部上的初等函数复合：phi(Re f)，结果为实值场"""

    _functions = {"exp": jets.exp, "sin": jets.sin, "cos": jets.cos}

    def __init__(self, inner: OctonionField, function: str, exponent: Optional[Number] = None):
        if function not in self._functions and function != "power":
            raise ValidationError(f"不支持的初等函数: {function}", error_code="bad_function")
        self.inner, self.function, self.exponent = inner, function, exponent
        self.name = f"{function}({inner.name})" if exponent is None else f"({inner.name})^{exponent}"

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        real = self.inner.components(x)[0]
        if self.function == "power":
            value = jets.power(real, self.exponent)
        else:
            value = self._functions[self.function](real)
        return [value] + [0.0] * 7


class QuadraticField(OctonionField):
    """f_j(x) = c_j + sum_a L[j,a] x_a + sum_{a,b} Q[j,a,b] x_a x_b"""

    def __init__(self, constant: Any, linear: Any, quadratic: Any, name: str = "quadratic"):
        self.constant = np.asarray(constant, dtype=float).reshape(8)
        self.linear = np.asarray(linear, dtype=float).reshape(8, 8)
        q = np.asarray(quadratic, dtype=float).reshape(8, 8, 8)
        # 上三角存储：Q[a,b] + Q[b,a] 合并到 a <= b
        self.quadratic = np.triu(q + np.swapaxes(q, 1, 2)) - np.einsum("jaa->ja", q)[:, :, None] * np.eye(8)
        self.name = name

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        monomials = {}
        for a in range(8):
            for b in range(a, 8):
                if np.any(self.quadratic[:, a, b] != 0.0):
                    monomials[(a, b)] = x[a] * x[b]
        out: List[Scalar] = []
        for j in range(8):
            acc: Scalar = float(self.constant[j])
            for a in range(8):
                if self.linear[j, a] != 0.0:
                    acc = acc + x[a] * float(self.linear[j, a])
            for (a, b), m in monomials.items():
                coeff = float(self.quadratic[j, a, b])
                if coeff != 0.0:
                    acc = acc + m * coeff
            out.append(acc)
        return out


def random_quadratic_field(rng: np.random.Generator, name: str = "random-quadratic") -> QuadraticField:
    return QuadraticField(
        rng.uniform(-1.0, 1.0, 8),
        rng.uniform(-1.0, 1.0, (8, 8)),
        rng.uniform(-1.0, 1.0, (8, 8, 8)),
        name=name,
    )


class CauchyKernelField(OctonionField):
    """x -> conj(x - p) / |x - p|^8，在 p 处奇异"""

    def __init__(self, pole: Octonion):
        self.pole = [float(v) for v in pole.c]
        self.name = f"kernel({pole!r})"

    def components(self, x: Sequence[Scalar]) -> List[Scalar]:
        d = [xi - pi for xi, pi in zip(x, self.pole)]
        r2 = d[0] * d[0]
        for k in range(1, 8):
            r2 = r2 + d[k] * d[k]
        nearest = r2.value if isinstance(r2, Jet2) else float(np.min(r2))
        if nearest < POLE_RADIUS_SQUARED:
            raise SingularityError(
                "求值点落在 Cauchy 核奇点上", error_code="kernel_pole", details={"pole": self.pole}
            )
        w = jets.power(r2, -4)
        return [d[0] * w] + [-(dk * w) for dk in d[1:]]


def _add(a: Scalar, b: Scalar) -> Scalar:
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    return a + b


def _neg(a: Scalar) -> Scalar:
    return 0.0 if _is_zero(a) else -a


# 常用场 ---------------------------------------------------------------------


def constant(value: Union[Octonion, Number]) -> OctonionField:
    return as_field(value)


def coordinate(index: int) -> OctonionField:
    return Coordinate(index)


def identity_field() -> OctonionField:
    return Identity()


def squared_norm_field() -> OctonionField:
    """|x|^2 作为实部场"""
    return QuadraticField(np.zeros(8), np.zeros((8, 8)), _squared_norm_quadratic(), name="|x|^2")


def _squared_norm_quadratic() -> np.ndarray:
    q = np.zeros((8, 8, 8))
    q[0] = np.eye(8)
    return q
