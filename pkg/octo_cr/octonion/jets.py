"""
二阶前向自动微分

Jet2 携带一个实值函数在某点的值、梯度和 Hessian；所有运算按乘积法则与链式法则传播。
Hessian 的更新只使用对称的构件（标量倍数、outer(g, g)、o + o.T），因此对称性是精确的。
"""

import math
from dataclasses import dataclass
from typing import Any, List, Sequence, Union

import numpy as np

from ..core.exceptions import DomainError
from .algebra import Octonion

Number = Union[int, float]


class Jet2:
    """实值函数的二阶 Taylor 数据：value、grad (n,)、hess (n, n)"""

    __slots__ = ("value", "grad", "hess")

    # 让 numpy 标量在二元运算中让位给 Jet2 的反射方法
    __array_ufunc__ = None

    def __init__(self, value: Number, grad: np.ndarray, hess: np.ndarray):
        self.value = float(value)
        self.grad = grad
        self.hess = hess

    @classmethod
    def variable(cls, value: Number, index: int, n: int = 8) -> "Jet2":
        grad = np.zeros(n)
        grad[index] = 1.0
        return cls(value, grad, np.zeros((n, n)))

    @classmethod
    def constant(cls, value: Number, n: int = 8) -> "Jet2":
        return cls(value, np.zeros(n), np.zeros((n, n)))

    @property
    def n(self) -> int:
        return int(self.grad.shape[0])

    def _chain(self, f0: float, f1: float, f2: float) -> "Jet2":
        """phi(self)，其中 f0, f1, f2 为 phi 及其一、二阶导数在 value 处的值"""
        return Jet2(f0, f1 * self.grad, f1 * self.hess + f2 * np.outer(self.grad, self.grad))

    # 算术 -------------------------------------------------------------------

    def __add__(self, other: Any) -> "Jet2":
        if isinstance(other, Jet2):
            return Jet2(self.value + other.value, self.grad + other.grad, self.hess + other.hess)
        return Jet2(self.value + float(other), self.grad, self.hess)

    __radd__ = __add__

    def __neg__(self) -> "Jet2":
        return Jet2(-self.value, -self.grad, -self.hess)

    def __sub__(self, other: Any) -> "Jet2":
        if isinstance(other, Jet2):
            return Jet2(self.value - other.value, self.grad - other.grad, self.hess - other.hess)
        return Jet2(self.value - float(other), self.grad, self.hess)

    def __rsub__(self, other: Any) -> "Jet2":
        return Jet2(float(other) - self.value, -self.grad, -self.hess)

    def __mul__(self, other: Any) -> "Jet2":
        if isinstance(other, Jet2):
            cross = np.outer(self.grad, other.grad)
            return Jet2(
                self.value * other.value,
                self.value * other.grad + other.value * self.grad,
                self.value * other.hess + other.value * self.hess + (cross + cross.T),
            )
        s = float(other)
        return Jet2(self.value * s, self.grad * s, self.hess * s)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet2":
        if self.value == 0.0:
            raise DomainError("jet 求倒数时值为零", error_code="jet_division_by_zero")
        v = self.value
        return self._chain(1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def __truediv__(self, other: Any) -> "Jet2":
        if isinstance(other, Jet2):
            return self * other.reciprocal()
        return self * (1.0 / float(other))

    def __rtruediv__(self, other: Any) -> "Jet2":
        return self.reciprocal() * float(other)

    def __pow__(self, exponent: Number) -> "Jet2":
        p = float(exponent)
        v = self.value
        if p == 2.0:
            return self * self
        if v <= 0.0 and not p.is_integer():
            raise DomainError(f"非整数幂要求正的底数: {v}", error_code="jet_power_domain")
        if v == 0.0 and p < 2.0:
            raise DomainError("零点处幂函数不可二阶微分", error_code="jet_power_domain")
        return self._chain(v**p, p * v ** (p - 1.0), p * (p - 1.0) * v ** (p - 2.0))

    # 初等函数 ---------------------------------------------------------------

    def exp(self) -> "Jet2":
        e = math.exp(self.value)
        return self._chain(e, e, e)

    def sin(self) -> "Jet2":
        s, c = math.sin(self.value), math.cos(self.value)
        return self._chain(s, c, -s)

    def cos(self) -> "Jet2":
        s, c = math.sin(self.value), math.cos(self.value)
        return self._chain(c, -s, -c)

    def sqrt(self) -> "Jet2":
        return self**0.5

    def __repr__(self) -> str:
        return f"Jet2(value={self.value!r}, grad={self.grad.tolist()!r})"


# 标量分派：float / ndarray 走 numpy，Jet2 走自身方法


def exp(x: Any) -> Any:
    return x.exp() if isinstance(x, Jet2) else np.exp(x)


def sin(x: Any) -> Any:
    return x.sin() if isinstance(x, Jet2) else np.sin(x)


def cos(x: Any) -> Any:
    return x.cos() if isinstance(x, Jet2) else np.cos(x)


def power(x: Any, p: Number) -> Any:
    return x**p if isinstance(x, Jet2) else np.power(x, p)


def as_jet(x: Any, n: int = 8) -> Jet2:
    return x if isinstance(x, Jet2) else Jet2.constant(float(x), n)


def variables(point: Sequence[Number]) -> List[Jet2]:
    n = len(point)
    return [Jet2.variable(float(v), i, n) for i, v in enumerate(point)]


@dataclass(frozen=True)
class OctonionJet2:
    """f = sum e_j f_j 的 8 个分量 jet：value (8,)、grad[j, i] = d_i f_j、hess[j, a, b]"""

    value: np.ndarray
    grad: np.ndarray
    hess: np.ndarray

    @classmethod
    def from_components(cls, components: Sequence[Any], n: int = 8) -> "OctonionJet2":
        jets = [as_jet(c, n) for c in components]
        return cls(
            value=np.array([j.value for j in jets]),
            grad=np.stack([j.grad for j in jets]),
            hess=np.stack([j.hess for j in jets]),
        )

    def component(self, j: int) -> Jet2:
        return Jet2(self.value[j], self.grad[j], self.hess[j])

    def point(self) -> Octonion:
        return Octonion(self.value)
