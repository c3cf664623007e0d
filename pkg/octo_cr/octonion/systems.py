"""
单演性的等价方程组

实 8x8 方程组与复 4x4 方程组都由结构张量在运行时生成，生成结果是权威版本；
随包的手工转录只用于比对（diff_systems）。四元数方程组按 f = g + h e4 拆分，
在 u = (x0..x3)、v = (x4..x7) 两组坐标上求值。
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import settings
from ..core.exceptions import FixtureError, PreconditionError, ValidationError
from .algebra import (
    SUBALGEBRA_MASKS,
    Octonion,
    Quaternion,
    Subalgebra,
    from_quaternionic,
    quaternion_components_product,
    structure_table,
)
from .fields import Constant, OctonionField
from .fixtures import transcribed_systems_data
from .jets import OctonionJet2
from .operators import cauchy_riemann_left_from_jet, inframonogenic_from_jet

logger = logging.getLogger(__name__)

_QCONJ = np.array([1.0, -1.0, -1.0, -1.0])


# ---------------------------------------------------------------------------
# 残差类型
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SystemResidual:
    """system: real / riesz / complex / quaternionic-left / quaternionic-right / ...

    values 为 (n,) 实数、(n,) 复数或 (n, 4) 四元数系数
    """

    system: str
    values: np.ndarray

    @property
    def component_norms(self) -> np.ndarray:
        if self.values.ndim == 2:
            return np.linalg.norm(self.values, axis=1)
        return np.abs(self.values)

    @property
    def max_norm(self) -> float:
        return float(np.max(self.component_norms))

    def quaternions(self) -> Tuple[Quaternion, ...]:
        if self.values.ndim != 2:
            raise ValidationError(f"{self.system} 残差不是四元数形式", error_code="bad_shape")
        return tuple(Quaternion(row) for row in self.values)


# ---------------------------------------------------------------------------
# 方程组的系数数据
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealTerm:
    """sign * d_{x_derivative} f_function"""

    sign: int
    derivative: int
    function: int

    def key(self) -> Tuple[int, int]:
        return self.derivative, self.function


@dataclass(frozen=True)
class ComplexTerm:
    """sign * d_{z_operator}(或其共轭) f_function(或其共轭)，下标从 1 开始"""

    sign: int
    operator: int
    operator_conjugated: bool
    function: int
    function_conjugated: bool

    def key(self) -> Tuple[int, bool, int, bool]:
        return self.operator, self.operator_conjugated, self.function, self.function_conjugated


@dataclass(frozen=True)
class RealSystem:
    equations: Tuple[Tuple[RealTerm, ...], ...]

    def coefficient_matrix(self, equation: int) -> np.ndarray:
        """C[i, j] 为 d_i f_j 在第 equation 个方程中的系数"""
        c = np.zeros((8, 8))
        for t in self.equations[equation]:
            c[t.derivative, t.function] += t.sign
        return c

    def coefficients(self) -> np.ndarray:
        return np.stack([self.coefficient_matrix(k) for k in range(len(self.equations))])

    def render(self) -> List[str]:
        lines = []
        for eq in self.equations:
            text = " ".join(f"{'+' if t.sign > 0 else '-'} d{t.derivative}f{t.function}" for t in eq)
            lines.append(f"{text.lstrip('+ ')} = 0")
        return lines

    def to_dict(self) -> Dict[str, Any]:
        return {
            "columns": ["sign", "derivative", "function"],
            "equations": [[[t.sign, t.derivative, t.function] for t in eq] for eq in self.equations],
        }


@dataclass(frozen=True)
class ComplexSystem:
    equations: Tuple[Tuple[ComplexTerm, ...], ...]

    def operator_slots(self, equation: int) -> np.ndarray:
        """(4 个 d_z + 4 个 d_zbar) x (4 个 f + 4 个 fbar) 的系数"""
        c = np.zeros((8, 8), dtype=int)
        for t in self.equations[equation]:
            row = t.operator - 1 + (4 if t.operator_conjugated else 0)
            col = t.function - 1 + (4 if t.function_conjugated else 0)
            c[row, col] += t.sign
        return c

    def render(self) -> List[str]:
        lines = []
        for eq in self.equations:
            parts = []
            for t in eq:
                op = f"d(z{t.operator}{'bar' if t.operator_conjugated else ''})"
                fn = f"f{t.function}{'bar' if t.function_conjugated else ''}"
                parts.append(f"{'+' if t.sign > 0 else '-'} {op}{fn}")
            lines.append(f"{' '.join(parts).lstrip('+ ')} = 0")
        return lines

    def to_dict(self) -> Dict[str, Any]:
        return {
            "columns": ["sign", "operator", "operator_conjugated", "function", "function_conjugated"],
            "equations": [
                [[t.sign, t.operator, t.operator_conjugated, t.function, t.function_conjugated] for t in eq]
                for eq in self.equations
            ],
        }


def _real_term_order(t: RealTerm) -> Tuple[int, int, bool]:
    return min(t.derivative, t.function), max(t.derivative, t.function), t.derivative > t.function


@lru_cache()
def generated_real_system() -> RealSystem:
    """第 k 个方程收集所有 e_i e_j = +-e_k 的项 d_i f_j"""
    table = structure_table()
    equations: List[List[RealTerm]] = [[] for _ in range(8)]
    for i in range(8):
        for j in range(8):
            sign, k = table.entry(i, j)
            equations[k].append(RealTerm(sign, i, j))
    return RealSystem(tuple(tuple(sorted(eq, key=_real_term_order)) for eq in equations))


@lru_cache()
def generated_complex_system() -> ComplexSystem:
    """由实方程组按 z_m = x_{2m-2} + e1 x_{2m-1} 成对重组

    s (d_p + sigma e1 d_q)(F_r + tau e1 F_s) 的实部系数为 (p,r): s, (q,s): -s sigma tau，
    虚部系数为 (q,r): s sigma, (p,s): s tau
    """
    coeffs = generated_real_system().coefficients()
    equations: List[Tuple[ComplexTerm, ...]] = []
    for k in range(1, 5):
        re, im = coeffs[2 * k - 2], coeffs[2 * k - 1]
        terms: List[ComplexTerm] = []
        for m in range(1, 5):
            p, q = 2 * m - 2, 2 * m - 1
            for n in range(1, 5):
                r, s_ = 2 * n - 2, 2 * n - 1
                block = [re[p, r], re[q, s_], re[q, r], re[p, s_], im[q, r], im[p, s_], im[p, r], im[q, s_]]
                if not any(block):
                    continue
                s = int(re[p, r])
                if s == 0:
                    raise FixtureError(f"复方程 {k} 的 ({m}, {n}) 块无法表示为单项", error_code="complex_generation")
                sigma = int(im[q, r]) * s
                tau = int(im[p, s_]) * s
                expected = [s, -s * sigma * tau, 0, 0, s * sigma, s * tau, 0, 0]
                if [int(v) for v in block] != expected or sigma == 0 or tau == 0:
                    raise FixtureError(f"复方程 {k} 的 ({m}, {n}) 块无法表示为单项", error_code="complex_generation")
                terms.append(ComplexTerm(s, m, sigma < 0, n, tau < 0))
        equations.append(tuple(terms))
    return ComplexSystem(tuple(equations))


@lru_cache()
def transcribed_systems() -> Tuple[RealSystem, ComplexSystem]:
    data = transcribed_systems_data()
    try:
        real = RealSystem(
            tuple(tuple(RealTerm(int(s), int(i), int(j)) for s, i, j in eq) for eq in data["real"]["equations"])
        )
        complex_ = ComplexSystem(
            tuple(
                tuple(ComplexTerm(int(s), int(m), bool(mc), int(n), bool(nc)) for s, m, mc, n, nc in eq)
                for eq in data["complex"]["equations"]
            )
        )
    except (TypeError, ValueError) as e:
        raise FixtureError(f"方程组转录格式错误: {e}", error_code="fixture_malformed") from e
    return real, complex_


@dataclass(frozen=True)
class SystemMismatch:
    system: str
    equation: int
    term: Tuple[Any, ...]
    generated: int
    transcribed: int
    acknowledged: bool = False
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "system": self.system,
            "equation": self.equation,
            "term": list(self.term),
            "generated": self.generated,
            "transcribed": self.transcribed,
            "acknowledged": self.acknowledged,
            "note": self.note,
        }


def _term_signs(terms: Sequence[Any]) -> Dict[Tuple[Any, ...], int]:
    out: Dict[Tuple[Any, ...], int] = {}
    for t in terms:
        out[t.key()] = out.get(t.key(), 0) + t.sign
    return out


def diff_systems() -> List[SystemMismatch]:
    """生成版与转录版逐方程逐项比较；errata 中登记过的差异标记为 acknowledged"""
    real_t, complex_t = transcribed_systems()
    errata = transcribed_systems_data()["errata"]
    pairs = [
        ("real", generated_real_system().equations, real_t.equations),
        ("complex", generated_complex_system().equations, complex_t.equations),
    ]
    out: List[SystemMismatch] = []
    for system, generated, transcribed in pairs:
        for k, (gen_eq, tr_eq) in enumerate(zip(generated, transcribed)):
            gen, tr = _term_signs(gen_eq), _term_signs(tr_eq)
            for key in sorted(set(gen) | set(tr), key=str):
                g, t = gen.get(key, 0), tr.get(key, 0)
                if g == t:
                    continue
                note = ""
                acknowledged = False
                for entry in errata:
                    if (
                        entry.get("system") == system
                        and entry.get("equation") == k
                        and tuple(entry.get("term", ())) == key
                        and entry.get("printed_sign") == t
                    ):
                        acknowledged, note = True, entry.get("note", "")
                out.append(SystemMismatch(system, k, key, g, t, acknowledged, note))
    unacknowledged = sum(1 for m in out if not m.acknowledged)
    logger.info(f"方程组比对完成: {len(out)} 处差异，其中未登记 {unacknowledged} 处")
    return out


# ---------------------------------------------------------------------------
# 实与复方程组
# ---------------------------------------------------------------------------


def real_system_residual_from_jet(jet: OctonionJet2) -> SystemResidual:
    coeffs = generated_real_system().coefficients()
    return SystemResidual("real", np.einsum("kij,ji->k", coeffs, jet.grad))


def real_system_residual(f: OctonionField, x: Any) -> SystemResidual:
    return real_system_residual_from_jet(f.jet(x))


def riesz_system_residual(f: OctonionField, x: Any) -> SystemResidual:
    """d0 f0 - sum d_i f_i；d0 f_i + d_i f0；d_i f_j - d_j f_i (1 <= i < j)"""
    g = f.jet(x).grad
    values = [g[0, 0] - sum(g[i, i] for i in range(1, 8))]
    values += [g[i, 0] + g[0, i] for i in range(1, 8)]
    values += [g[j, i] - g[i, j] for i in range(1, 8) for j in range(i + 1, 8)]
    return SystemResidual("riesz", np.array(values))


def complex_system_residual_from_jet(jet: OctonionJet2) -> SystemResidual:
    g = jet.grad
    values = np.zeros(4, dtype=complex)
    for k, eq in enumerate(generated_complex_system().equations):
        for t in eq:
            p, q = 2 * t.operator - 2, 2 * t.operator - 1
            r, s = 2 * t.function - 2, 2 * t.function - 1
            sigma = -1.0 if t.operator_conjugated else 1.0
            tau = -1.0 if t.function_conjugated else 1.0
            re = g[r, p] - sigma * tau * g[s, q]
            im = sigma * g[r, q] + tau * g[s, p]
            values[k] += t.sign * complex(re, im)
    return SystemResidual("complex", values)


def complex_system_residual(f: OctonionField, x: Any) -> SystemResidual:
    return complex_system_residual_from_jet(f.jet(x))


def complex_to_real(residual: SystemResidual) -> np.ndarray:
    """E_k = R_{2k-2} + e1 R_{2k-1} 的逆：复残差 -> 8 个实残差"""
    out = np.empty(8)
    out[0::2] = residual.values.real
    out[1::2] = residual.values.imag
    return out


# ---------------------------------------------------------------------------
# 四元数拆分
# ---------------------------------------------------------------------------


class _UpperHalf(OctonionField):
    """f = g + h e4 -> h（作为 H 值场）"""

    def __init__(self, inner: OctonionField):
        self.inner = inner
        self.name = f"h({inner.name})"

    def components(self, x: Sequence[Any]) -> List[Any]:
        return list(self.inner.components(x)[4:]) + [0.0] * 4


@dataclass(frozen=True)
class QuaternionicSplit:
    """f = g + h e4，g、h 为四元数值场（系数 4..7 恒为零的八元数场）"""

    g: OctonionField
    h: OctonionField
    name: str = field(default="split")

    @classmethod
    def from_field(cls, f: OctonionField) -> "QuaternionicSplit":
        return cls(f.project(Subalgebra.H), _UpperHalf(f), name=f.name)

    def reassemble(self) -> OctonionField:
        return self.g + self.h * Constant(Octonion.basis(4))

    def jets(self, x: Any) -> Tuple[OctonionJet2, OctonionJet2]:
        return self.g.jet(x), self.h.jet(x)

    def reassembly_residual(self, original: OctonionField, points: Any) -> float:
        pts = np.asarray(points, dtype=float)
        return float(np.max(np.abs(self.reassemble().evaluate(pts) - original.evaluate(pts))))


@lru_cache()
def _quaternion_tensor() -> np.ndarray:
    """Q[i, j, k]：q_i q_j 在 q_k 上的系数"""
    eye = np.eye(4)
    t = np.zeros((4, 4, 4))
    for i in range(4):
        for j in range(4):
            t[i, j] = quaternion_components_product(eye[i], eye[j])
    t.setflags(write=False)
    return t


def _qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.asarray(quaternion_components_product(a, b), dtype=float)


def _grad4(jet: OctonionJet2, conj: bool = False) -> np.ndarray:
    g = jet.grad[:4]
    return g * _QCONJ[:, None] if conj else g


def _hess4(jet: OctonionJet2, conj: bool = False) -> np.ndarray:
    h = jet.hess[:4]
    return h * _QCONJ[:, None, None] if conj else h


def _left_op(grad4: np.ndarray, offset: int, conj_op: bool = False) -> np.ndarray:
    """sum_i q_i d_{offset+i} X（conj_op 时 q_i 取共轭）"""
    w = _QCONJ if conj_op else np.ones(4)
    return np.einsum("ick,ci,i->k", _quaternion_tensor(), grad4[:, offset : offset + 4], w)


def _right_op(grad4: np.ndarray, offset: int, conj_op: bool = False) -> np.ndarray:
    """sum_i d_{offset+i} X q_i"""
    w = _QCONJ if conj_op else np.ones(4)
    return np.einsum("cik,ci,i->k", _quaternion_tensor(), grad4[:, offset : offset + 4], w)


def _basis(conj: bool) -> np.ndarray:
    return np.eye(4) * (_QCONJ[:, None] if conj else 1.0)


Factor = Tuple[str, bool]


def _second(hess4: np.ndarray, first: int, second: int, left: Sequence[Factor], right: Sequence[Factor]) -> np.ndarray:
    """sum_{i,k} (L_1 L_2 ...) d_{first+i} d_{second+k} X (R_1 R_2 ...)

    因子 ("i", conj) 表示 q_i 或其共轭，("k", conj) 同理；左因子依次相乘后左乘，右因子依次右乘
    """
    out = np.zeros(4)
    for i in range(4):
        for k in range(4):
            value = hess4[:, first + i, second + k]
            factor = np.array([1.0, 0, 0, 0])
            for which, conj in left:
                factor = _qmul(factor, _basis(conj)[i if which == "i" else k])
            value = _qmul(factor, value)
            for which, conj in right:
                value = _qmul(value, _basis(conj)[i if which == "i" else k])
            out += value
    return out


_U, _V = 0, 4


def _left_system(gj: OctonionJet2, hj: OctonionJet2) -> np.ndarray:
    """(d_u g - hbar d_v, d_v gbar + h d_u)"""
    q1 = _left_op(_grad4(gj), _U) - _right_op(_grad4(hj, conj=True), _V)
    q2 = _left_op(_grad4(gj, conj=True), _V) + _right_op(_grad4(hj), _U)
    return np.stack([q1, q2])


def _right_system(gj: OctonionJet2, hj: OctonionJet2) -> np.ndarray:
    """(g d_u - d_vbar h, h d_ubar + d_v g)"""
    q1 = _right_op(_grad4(gj), _U) - _left_op(_grad4(hj), _V, conj_op=True)
    q2 = _right_op(_grad4(hj), _U, conj_op=True) + _left_op(_grad4(gj), _V)
    return np.stack([q1, q2])


def quaternionic_system_residual(split: QuaternionicSplit, x: Any, side: str = "left") -> SystemResidual:
    gj, hj = split.jets(x)
    if side == "left":
        return SystemResidual("quaternionic-left", _left_system(gj, hj))
    if side == "right":
        return SystemResidual("quaternionic-right", _right_system(gj, hj))
    raise ValidationError(f"未知的方向: {side}", error_code="bad_side")


def _require_zero(jet: OctonionJet2, mask: np.ndarray, what: str) -> None:
    deviation = float(np.max(np.abs(jet.value * mask))) + float(np.max(np.abs(jet.grad * mask[:, None])))
    if deviation > settings.TOL_ALGEBRA:
        raise PreconditionError(f"特殊情形要求 {what} 为零，实际偏差 {deviation:.3e}", error_code="corollary_precondition")


def corollary_special_case_residual(split: QuaternionicSplit, x: Any, part: str = "a") -> SystemResidual:
    """(a) g, h 为实值：(d_u g0 - d_v h0, d_u h0 + d_v g0)

    (b) g, h 为纯虚：(d_u g + h d_v, h d_u - d_v g)
    """
    gj, hj = split.jets(x)
    real = SUBALGEBRA_MASKS[Subalgebra.R]
    vector = SUBALGEBRA_MASKS[Subalgebra.H] - real
    if part == "a":
        _require_zero(gj, vector, "g 的向量部分")
        _require_zero(hj, vector, "h 的向量部分")
        q1 = _left_op(_grad4(gj), _U) - _left_op(_grad4(hj), _V)
        q2 = _left_op(_grad4(hj), _U) + _left_op(_grad4(gj), _V)
    elif part == "b":
        _require_zero(gj, real, "g 的实部")
        _require_zero(hj, real, "h 的实部")
        q1 = _left_op(_grad4(gj), _U) + _right_op(_grad4(hj), _V)
        q2 = _right_op(_grad4(hj), _U) - _left_op(_grad4(gj), _V)
    else:
        raise ValidationError(f"未知的特殊情形: {part}", error_code="bad_part")
    return SystemResidual(f"corollary-{part}", np.stack([q1, q2]))


def split_harmonicity(split: QuaternionicSplit, x: Any) -> Tuple[float, float]:
    """(|Laplace g|, |Laplace h|)"""
    gj, hj = split.jets(x)
    return (
        float(np.linalg.norm(np.einsum("jaa->j", gj.hess))),
        float(np.linalg.norm(np.einsum("jaa->j", hj.hess))),
    )


def inframonogenic_decomposition_residual(split: QuaternionicSplit, x: Any) -> Tuple[Quaternion, Quaternion]:
    """两条二阶四元数方程的左边

    Laplace_v gbar - d_u g d_u + hbar d_v d_u + d_vbar h d_u，
    Laplace_u h + d_v gbar d_ubar + d_v d_u g - d_v hbar d_v
    """
    gj, hj = split.jets(x)
    g, gbar = _hess4(gj), _hess4(gj, conj=True)
    h, hbar = _hess4(hj), _hess4(hj, conj=True)

    laplace_v_gbar = np.einsum("jaa->j", gbar[:, _V : _V + 4, _V : _V + 4])
    laplace_u_h = np.einsum("jaa->j", h[:, _U : _U + 4, _U : _U + 4])

    # 第一条
    dug_du = _second(g, _U, _U, [("i", False)], [("k", False)])
    hbar_dv_du = _second(hbar, _V, _U, [], [("i", False), ("k", False)])
    dvbar_h_du = _second(h, _V, _U, [("i", True)], [("k", False)])
    first = laplace_v_gbar - dug_du + hbar_dv_du + dvbar_h_du

    # 第二条
    dv_gbar_dubar = _second(gbar, _V, _U, [("i", False)], [("k", True)])
    dv_du_g = _second(g, _V, _U, [("i", False), ("k", False)], [])
    dv_hbar_dv = _second(hbar, _V, _V, [("i", False)], [("k", False)])
    second = laplace_u_h + dv_gbar_dubar + dv_du_g - dv_hbar_dv
    return Quaternion(first), Quaternion(second)


def reassemble_decomposition(first: Quaternion, second: Quaternion) -> Octonion:
    """两条方程左边 -> (d_x f) d_x = -first + second e4"""
    return from_quaternionic(-first, second)


# ---------------------------------------------------------------------------
# 等价性报告
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceRow:
    index: int
    abstract_norm: float
    real_norm: float
    complex_norm: float
    quaternionic_norm: float
    repack_real: float
    repack_complex: float
    repack_quaternionic: float
    agree: bool

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass(frozen=True)
class EquivalenceReport:
    field_name: str
    tolerance: float
    rows: Tuple[EquivalenceRow, ...]

    @property
    def disagreements(self) -> List[int]:
        return [r.index for r in self.rows if not r.agree]

    @property
    def max_abstract(self) -> float:
        return max((r.abstract_norm for r in self.rows), default=0.0)

    @property
    def max_system(self) -> float:
        return max((max(r.real_norm, r.complex_norm, r.quaternionic_norm) for r in self.rows), default=0.0)

    @property
    def max_repack(self) -> float:
        return max(
            (max(r.repack_real, r.repack_complex, r.repack_quaternionic) for r in self.rows),
            default=0.0,
        )


def equivalence_row(f: OctonionField, split: QuaternionicSplit, x: Any, index: int, tol: float) -> EquivalenceRow:
    jet = f.jet(x)
    cr = cauchy_riemann_left_from_jet(jet)
    real = real_system_residual_from_jet(jet)
    cplx = complex_system_residual_from_jet(jet)
    quat = quaternionic_system_residual(split, x, "left")
    q1, q2 = quat.quaternions()
    norms = [cr.norm(), real.max_norm, cplx.max_norm, quat.max_norm]
    below = [n <= tol for n in norms]
    return EquivalenceRow(
        index=index,
        abstract_norm=norms[0],
        real_norm=norms[1],
        complex_norm=norms[2],
        quaternionic_norm=norms[3],
        repack_real=float(np.max(np.abs(real.values - cr.c))),
        repack_complex=float(np.max(np.abs(complex_to_real(cplx) - real.values))),
        repack_quaternionic=float(np.max(np.abs(from_quaternionic(q1, q2).c - cr.c))),
        agree=all(below) or not any(below),
    )


def equivalence_report(f: OctonionField, points: Any, tolerance: Optional[float] = None) -> EquivalenceReport:
    """逐点比较 |d_x f| 与三种方程组的残差；不一致只记录不抛出"""
    tol = settings.TOL_FIRST_ORDER if tolerance is None else tolerance
    split = QuaternionicSplit.from_field(f)
    pts = np.asarray(points, dtype=float).reshape(-1, 8)
    rows = tuple(equivalence_row(f, split, x, n, tol) for n, x in enumerate(pts))
    report = EquivalenceReport(f.name, tol, rows)
    if report.disagreements:
        logger.warning(f"{f.name}: {len(report.disagreements)} 个点上各方程组的判定不一致")
    return report


def decomposition_deviation(f: OctonionField, x: Any) -> float:
    """四元数分解重组后与直接计算的 (d_x f) d_x 之差"""
    first, second = inframonogenic_decomposition_residual(QuaternionicSplit.from_field(f), x)
    return (reassemble_decomposition(first, second) - inframonogenic_from_jet(f.jet(x))).norm()
