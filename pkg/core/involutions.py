# -*- coding: utf-8 -*-
"""
对合与相容性模块
实形式 τ_g 与分次自同构 θ 的相容性判定、R-相容的紧形式共轭、次数反转映射，
以及对紧形式的数值改进（φ = [(τ_g τ_u')²]^{1/4}）。

Exact checks work on SemilinearMap matrices plus degree bookkeeping, so they
cover m = 3 as well. The improvement step is the only floating-point code in
the package: complex n-dim operators are realified to 2n × 2n real matrices
with real parts first, then imaginary parts.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from scipy import linalg as sla
from sympy import QQ, QQ_I

from core.catalog import GradingAutomorphism, SemilinearMap, cartan_involution
from core.exceptions import InputError, NumericToleranceError, PreconditionError
from core.lie import Element, GradedAlgebra, Subspace
from core.linalg import ExactMatrix, kernel_basis
from core.scalars import imaginary_unit, to_float

logger = logging.getLogger(__name__)

NOT_COMPACT_TYPE = "not an involution of compact type"


# ==================== 精确相容性 ====================

@dataclass
class CompatibilityReport:
    """τ_g θ = θ⁻¹ τ_g、θ τ_g θ = τ_g 与 g = ⊕(g ∩ g_i^ℂ) 的检验结果"""
    comp_holds: bool
    comp2_holds: bool
    grad_holds: bool
    theta_invariant: bool
    witness: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'comp_holds': self.comp_holds,
            'comp2_holds': self.comp2_holds,
            'grad_holds': self.grad_holds,
            'theta_invariant': self.theta_invariant,
            'witness': self.witness,
        }


def _check_dims(tau: SemilinearMap, theta: GradingAutomorphism):
    if tau.dim != len(theta.degrees):
        raise InputError(f"map of dimension {tau.dim} and grading of dimension {len(theta.degrees)}")


def relation_failure(tau: SemilinearMap, theta: GradingAutomorphism, s: int) -> Optional[Tuple[int, int]]:
    """
    检验 τ θ = θ^s τ；返回第一个失败的 (k, j)（M_kj ≠ 0）。

    On b_j the left side picks up ζ^{±e_j} (the sign flips when τ conjugates)
    and the right side picks up ζ^{s·e_k} on the b_k component.
    """
    m = theta.modulus
    for (k, j) in sorted(tau.matrix.to_dok()):
        left = -theta.eigen_exponent(j) if tau.conjugates else theta.eigen_exponent(j)
        if (left - s * theta.eigen_exponent(k)) % m:
            return k, j
    return None


def sandwich_failure(tau: SemilinearMap, theta: GradingAutomorphism) -> Optional[Tuple[int, int]]:
    """检验 θ τ θ = τ"""
    m = theta.modulus
    for (k, j) in sorted(tau.matrix.to_dok()):
        inner = -theta.eigen_exponent(j) if tau.conjugates else theta.eigen_exponent(j)
        if (theta.eigen_exponent(k) + inner) % m:
            return k, j
    return None


def grading_failure(tau: SemilinearMap, theta: GradingAutomorphism) -> Optional[Tuple[int, int]]:
    """τ 是否保持每个 g_k^ℂ（对共轭线性 τ 即实形式按次数分解）"""
    for (k, j) in sorted(tau.matrix.to_dok()):
        if theta.degrees[k] != theta.degrees[j]:
            return k, j
    return None


def check_compatibility(algebra: GradedAlgebra, tau_g: SemilinearMap,
                        theta: GradingAutomorphism) -> CompatibilityReport:
    """在基上检验三个等价条件"""
    _check_dims(tau_g, theta)
    if algebra.dim != tau_g.dim:
        raise InputError(f"map of dimension {tau_g.dim} on algebra {algebra.name} of dimension {algebra.dim}")
    comp = relation_failure(tau_g, theta, -1)
    comp2 = sandwich_failure(tau_g, theta)
    grad = grading_failure(tau_g, theta) if tau_g.conjugates else comp
    invariant = relation_failure(tau_g, theta, 1)
    if (comp is None) != (comp2 is None):
        raise PreconditionError("relations τθ = θ⁻¹τ and θτθ = τ disagree")
    failure = comp or comp2 or grad
    witness = algebra.labels[failure[1]] if failure else None
    report = CompatibilityReport(comp is None, comp2 is None, grad is None, invariant is None, witness)
    logger.debug(f"compatibility on {algebra.name}: {report.to_dict()}")
    return report


def permutation_map(dim: int, permutation, conjugates: bool = False) -> SemilinearMap:
    """基置换 b_j ↦ b_{π(j)}"""
    dok = {(int(permutation[j]), j): QQ_I(1, 0) for j in range(dim)}
    return SemilinearMap(ExactMatrix.from_dok(dok, (dim, dim), QQ_I), conjugates)


# ==================== R-相容 ====================

@dataclass
class RCompatibility:
    holds: bool
    reason: Optional[str] = None
    witness: Optional[str] = None
    block_map: Dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'holds': self.holds, 'reason': self.reason, 'witness': self.witness,
                'block_map': {str(k): v for k, v in self.block_map.items()}}


def is_r_compatible(algebra: GradedAlgebra, tau_u: SemilinearMap,
                    theta: GradingAutomorphism) -> RCompatibility:
    """τ_u θ = θ τ_u，等价于 τ_u(g_k) = g_{-k}"""
    _check_dims(tau_u, theta)
    if not tau_u.conjugates or not tau_u.is_involution():
        return RCompatibility(False, NOT_COMPACT_TYPE)
    failure = relation_failure(tau_u, theta, 1)
    if failure is not None:
        k, j = failure
        return RCompatibility(False, f"{algebra.labels[j]} is sent outside the reversed degree",
                              algebra.labels[j])
    m = theta.modulus
    return RCompatibility(True, block_map={k: (-k) % m for k in range(m)})


def degree_reversal_map(tau_u: SemilinearMap, x: Element, theta: Optional[GradingAutomorphism] = None) -> Element:
    """
    τ_u 限制到实形式 g 上：g_i 中的 G_0-轨道 ↔ g_{-i} 中的轨道。

    ``x`` may live in the real algebra (τ_u must then have a rational matrix)
    or in its complexification.
    """
    algebra = x.algebra
    theta = theta or GradingAutomorphism(tuple(algebra.degrees), algebra.modulus)
    check = is_r_compatible(algebra, tau_u, theta)
    if not check.holds:
        raise PreconditionError(f"τ_u is not R-compatible: {check.reason}")
    if algebra.field == QQ:
        if not tau_u.matrix.is_rational():
            raise PreconditionError("τ_u does not preserve the real form")
        return Element(algebra, tau_u.matrix.to_rational().apply(x.coords))
    return Element(algebra, tau_u.apply(x.coords))


# ==================== 数值改进 ====================

@dataclass
class ApproxOperator:
    """实化后的双精度算子"""
    matrix: np.ndarray
    tolerance: float

    def residual_to(self, other: np.ndarray) -> float:
        return float(np.max(np.abs(self.matrix - other)))


@dataclass
class ImprovementResult:
    phi: ApproxOperator
    tau: ApproxOperator
    spectrum: list
    residuals: Dict[str, float]
    trivial: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'phi_spectrum': [round(v, 12) for v in self.spectrum],
            'phi_is_identity': self.trivial,
            'residuals': {k: float(f"{v:.3e}") for k, v in self.residuals.items()},
            'tolerance': self.phi.tolerance,
        }


def _complex_array(matrix) -> np.ndarray:
    out = np.zeros(matrix.shape, dtype=complex)
    for (i, j), v in matrix.to_dok().items():
        out[i, j] = to_float(v, matrix.field)
    return out


def realify(operator: Union[SemilinearMap, np.ndarray], conjugates: bool = False) -> np.ndarray:
    """
    n 维复算子 → 2n × 2n 实矩阵（先实部后虚部）。

    Linear M = A + iB gives [[A, -B], [B, A]]; v ↦ M·conj(v) gives
    [[A, B], [B, -A]].
    """
    if isinstance(operator, SemilinearMap):
        conjugates = operator.conjugates
        operator = _complex_array(operator.matrix)
    a, b = operator.real, operator.imag
    if conjugates:
        return np.block([[a, b], [b, -a]])
    return np.block([[a, -b], [b, a]])


def theta_realified(theta: GradingAutomorphism) -> np.ndarray:
    phases = np.exp(2j * np.pi * np.array([theta.eigen_exponent(j) for j in range(len(theta.degrees))]) / theta.modulus)
    return realify(np.diag(phases))


def numeric_killing(algebra: GradedAlgebra) -> np.ndarray:
    """数值 Killing Gram 矩阵 K_ij = tr(ad b_i ad b_j)"""
    ads = np.stack([_complex_array(algebra.basis_ad(i)) for i in range(algebra.dim)])
    return np.tensordot(ads, ads.transpose(0, 2, 1), axes=([1, 2], [1, 2]))


def hermitian_gram(algebra: GradedAlgebra, tau_real: np.ndarray) -> np.ndarray:
    """实化的 Re H(x, y)，H(x, y) = −B(x, τ y)"""
    n = algebra.dim
    killing = numeric_killing(algebra)
    # complex column for each real basis vector: b_j, then i·b_j
    basis = np.hstack([np.eye(n), 1j * np.eye(n)])
    images_real = tau_real @ np.eye(2 * n)
    images = images_real[:n, :] + 1j * images_real[n:, :]
    gram = -(basis.T @ killing @ images).real
    return (gram + gram.T) / 2


def compact_direction(real_algebra: GradedAlgebra, complex_algebra: GradedAlgebra) -> Element:
    """
    i·X，X 为 k ∩ g_0 的第一个基向量。

    Conjugating τ_u by exp(ε ad(i X)) keeps it commuting with θ but not with
    τ_g; real elements and elements of the compact form leave (τ_g τ_u)² = 1.
    """
    omega = cartan_involution(real_algebra)
    fixed = Subspace(real_algebra, kernel_basis(omega - ExactMatrix.identity(real_algebra.dim, real_algebra.field)))
    compact = fixed.intersect(real_algebra.component_subspace(0))
    if compact.dim == 0:
        raise PreconditionError(f"{real_algebra.name} has no compact degree-0 direction; "
                                f"every θ-compatible perturbation is trivial")
    x = compact.elements()[0]
    i = imaginary_unit()
    return Element(complex_algebra, [i * QQ_I.convert(c) for c in x.coords])


def perturbed_conjugation(algebra: GradedAlgebra, tau_u: SemilinearMap, element: Element,
                          epsilon: float) -> np.ndarray:
    """Ad(exp(ε·ad h)) τ_u Ad(exp(ε·ad h))⁻¹（数值，实化）"""
    ad = _complex_array(algebra.ad_matrix(element))
    g = sla.expm(epsilon * ad)
    big = realify(g)
    return big @ realify(tau_u) @ np.linalg.inv(big)


def improve_compact_form(algebra: GradedAlgebra, tau_g: SemilinearMap,
                         tau_u_prime: Union[SemilinearMap, np.ndarray], theta: GradingAutomorphism,
                         tolerance: float = 1e-9) -> ImprovementResult:
    """
    改进紧形式使其与 τ_g、θ 同时交换。

    ``tau_u_prime`` is a conjugate-linear map, either exact or already
    realified. Raises NumericToleranceError when P is not positive or a
    residual exceeds the tolerance.
    """
    n = algebra.dim
    r_g = realify(tau_g)
    r_u = tau_u_prime if isinstance(tau_u_prime, np.ndarray) else realify(tau_u_prime)
    if r_u.shape != (2 * n, 2 * n):
        raise InputError(f"realified map has shape {r_u.shape}, expected {(2 * n, 2 * n)}")
    r_theta = theta_realified(theta)
    scale = max(1.0, float(np.max(np.abs(r_u))))
    if np.max(np.abs(r_theta @ r_u - r_u @ r_theta)) > tolerance * scale:
        raise PreconditionError("τ_u' does not commute with θ")

    gram = hermitian_gram(algebra, r_u)
    try:
        lower = sla.cholesky(gram, lower=True)
    except np.linalg.LinAlgError as e:
        raise NumericToleranceError("input is not a compatible pair", original_error=e)

    p = np.linalg.matrix_power(r_g @ r_u, 2)
    adjoint_gap = float(np.max(np.abs(gram @ p - p.T @ gram)))
    if adjoint_gap > tolerance * max(1.0, float(np.max(np.abs(gram @ p)))):
        raise NumericToleranceError("input is not a compatible pair", residual=adjoint_gap)

    # orthonormal frame for Re H: P̃ = Lᵀ P L⁻ᵀ is symmetric
    lower_t_inv = np.linalg.inv(lower.T)
    p_tilde = lower.T @ p @ lower_t_inv
    p_tilde = (p_tilde + p_tilde.T) / 2
    values, vectors = sla.eigh(p_tilde)
    if values.min() <= tolerance:
        raise NumericToleranceError("input is not a compatible pair", residual=float(values.min()))
    root = vectors @ np.diag(values ** 0.25) @ vectors.T
    phi = lower_t_inv @ root @ lower.T
    phi_inv = np.linalg.inv(phi)
    tau_new = phi @ r_u @ phi_inv

    residuals = {
        'tau_g': float(np.max(np.abs(r_g @ tau_new - tau_new @ r_g))),
        'theta': float(np.max(np.abs(r_theta @ tau_new - tau_new @ r_theta))),
        'inverse_conjugation': float(np.max(np.abs(r_u @ phi @ np.linalg.inv(r_u) - phi_inv))),
    }
    logger.info(f"compact form improvement residuals: {residuals}")
    worst = max(residuals.values())
    if worst > tolerance * max(1.0, float(np.max(np.abs(tau_new)))):
        raise NumericToleranceError("input is not a compatible pair", residual=worst)
    spectrum = sorted(float(v) ** 0.25 for v in values)
    trivial = bool(np.allclose(phi, np.eye(2 * n), atol=tolerance))
    return ImprovementResult(ApproxOperator(phi, tolerance), ApproxOperator(tau_new, tolerance),
                             spectrum, residuals, trivial)
