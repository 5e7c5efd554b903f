# -*- coding: utf-8 -*-
"""
Jordan 分解与 sl₂-三元组模块
幂零/半单判定、元素的 Jordan 分解、分次 sl₂-三元组 (h, e, f) 的构造（含修正项）、
特征元在 U₀(e) 下的共轭，以及轨道闭包含零的缩放判据。
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import Poly, QQ

from core.exceptions import ComputationError, NotNilpotentError, PreconditionError
from core.lie import Element, GradedAlgebra, Subspace, element_to_dict
from core.linalg import (T, ExactMatrix, local_minimal_polynomial, matrix_jordan_chevalley,
                         minimal_polynomial, nilpotency_index, nilpotent_exp, rank_kernel_solve)

logger = logging.getLogger(__name__)

NOT_IN_SEMISIMPLE = "not nilpotent or not in a graded semisimple algebra"


# ==================== 判定 ====================

def is_nilpotent(x: Element) -> bool:
    """ad x 幂零"""
    return nilpotency_index(x.algebra.ad_matrix(x)) is not None


def is_semisimple(x: Element) -> bool:
    """ad x 的极小多项式无平方因子"""
    mu = minimal_polynomial(x.algebra.ad_matrix(x))
    return mu.sqf_part().degree() == mu.degree()


# ==================== Jordan 分解 ====================

@dataclass
class JordanPair:
    """x = x_s + x_n"""
    semisimple: Element
    nilpotent: Element

    def to_dict(self) -> Dict[str, Any]:
        return {'xs': element_to_dict(self.semisimple), 'xn': element_to_dict(self.nilpotent)}


def solve_ad(algebra: GradedAlgebra, target: ExactMatrix,
             candidates: Optional[Sequence[int]] = None,
             chunk: int = 8) -> Optional[Element]:
    """
    求 y 使 ad(y) = target（未知量限制在 candidates 对应的基向量上）。

    Columns j of ad(y) = Σ y_i [b_i, b_j] are stacked a chunk at a time until
    the unknowns are determined; the result is checked against the full matrix.
    """
    candidates = list(range(algebra.dim)) if candidates is None else list(candidates)
    if not candidates:
        return algebra.zero() if target.is_zero() else None
    dim = algebra.dim
    dok: Dict[tuple, Any] = {}
    rhs: List = []
    result = None
    for start in range(0, dim, chunk):
        for j in range(start, min(start + chunk, dim)):
            offset = len(rhs)
            for c, i in enumerate(candidates):
                for k, value in algebra.table[i].get(j, {}).items():
                    dok[(offset + k, c)] = value
            rhs.extend(target.column(j))
        system = ExactMatrix.from_dok(dok, (len(rhs), len(candidates)), algebra.field)
        result = rank_kernel_solve(system, rhs)
        if not result.consistent:
            return None
        if result.rank == len(candidates):
            break
    coords = [algebra.field.zero] * dim
    for c, i in enumerate(candidates):
        coords[i] = result.solution[c]
    y = Element(algebra, coords)
    return y if algebra.ad_matrix(y) == target else None


def jordan_decompose(x: Element) -> JordanPair:
    """元素的 Jordan 分解；齐次元素的两部分保持同一次数"""
    algebra = x.algebra
    if x.is_zero():
        return JordanPair(x, x)
    decomposition = matrix_jordan_chevalley(algebra.ad_matrix(x))
    if decomposition.polynomial.is_zero:
        return JordanPair(algebra.zero(), x)
    if decomposition.polynomial == Poly(T, T, domain=decomposition.polynomial.get_domain()):
        return JordanPair(x, algebra.zero())

    degree = x.degree()
    candidates = algebra.degree_indices(degree) if degree is not None else None
    xs = solve_ad(algebra, decomposition.semisimple, candidates)
    if xs is None and candidates is not None:
        xs = solve_ad(algebra, decomposition.semisimple)
    if xs is None:
        raise ComputationError("ad(y) = S has no solution; algebra is not semisimple")
    xn = x - xs
    if not xs.bracket(xn).is_zero():
        raise ComputationError("Jordan parts do not commute")
    if degree is not None and not (xs.is_homogeneous(degree) and xn.is_homogeneous(degree)):
        raise ComputationError("Jordan parts left the graded component of x")
    return JordanPair(xs, xn)


# ==================== sl₂-三元组 ====================

@dataclass
class Sl2Triple:
    """[h, e] = 2e，[h, f] = −2f，[e, f] = h"""
    h: Element
    e: Element
    f: Element
    uniqueness_dim: int = 0

    def relations_hold(self) -> bool:
        h, e, f = self.h, self.e, self.f
        return (h.bracket(e) == e.scale(2) and h.bracket(f) == f.scale(-2)
                and e.bracket(f) == h)

    def to_dict(self) -> Dict[str, Any]:
        return {'h': element_to_dict(self.h), 'e': element_to_dict(self.e),
                'f': element_to_dict(self.f)}


def _require_degree_one(e: Element):
    if e.is_zero() or not e.is_homogeneous(1):
        raise PreconditionError("e must be a nonzero homogeneous element of degree 1")


def _solve_in(algebra: GradedAlgebra, images: Sequence[Sequence], rhs: Sequence):
    matrix = ExactMatrix.from_columns(list(images), algebra.field, nrows=algebra.dim)
    return rank_kernel_solve(matrix, rhs)


def jmv_triple(e: Element) -> Sl2Triple:
    """
    分次 sl₂-三元组。

    f' ∈ g_{-1} solves [[e, f'], e] = 2e (free variables zero), h = [e, f'],
    and z ∈ Z_g(e) ∩ g_{-1} solves (ad h + 2) z = −[h, f'] − 2f'.
    """
    algebra = e.algebra
    _require_degree_one(e)
    if not is_nilpotent(e):
        raise NotNilpotentError(NOT_IN_SEMISIMPLE)
    lower = algebra.component_subspace(-1)
    lower_basis = lower.elements()

    images = [e.bracket(b).bracket(e).coords for b in lower_basis]
    step = _solve_in(algebra, images, e.scale(2).coords)
    if not step.consistent or step.solution is None:
        raise ComputationError(NOT_IN_SEMISIMPLE)
    f_prime = lower.combination(step.solution)
    h = e.bracket(f_prime)

    residual = h.bracket(f_prime).scale(-1) - f_prime.scale(2)
    f = f_prime
    if not residual.is_zero():
        kernel = algebra.centralizer(e, within=lower)
        shifted = [(h.bracket(z) + z.scale(2)).coords for z in kernel.elements()]
        correction = _solve_in(algebra, shifted, residual.coords) if shifted else None
        if correction is None or not correction.consistent:
            raise ComputationError(NOT_IN_SEMISIMPLE)
        f = f_prime + kernel.combination(correction.solution)

    triple = Sl2Triple(h, e, f, uniqueness_dim=_f_freedom(algebra, lower, e, h))
    if not triple.relations_hold():
        raise ComputationError("constructed triple fails the sl2 relations")
    if triple.uniqueness_dim:
        logger.warning(f"f is not unique given (h, e): {triple.uniqueness_dim}-dimensional freedom")
    logger.debug(f"jmv triple on {algebra.name}: h = {h.describe()}")
    return triple


def _f_freedom(algebra: GradedAlgebra, lower: Subspace, e: Element, h: Element) -> int:
    """{f ∈ g_{-1} : [e, f] = 0, [h, f] = −2f} 的维数"""
    columns = []
    for b in lower.elements():
        columns.append(e.bracket(b).coords + (h.bracket(b) + b.scale(2)).coords)
    if not columns:
        return 0
    matrix = ExactMatrix.from_columns(columns, algebra.field, nrows=2 * algebra.dim)
    return len(rank_kernel_solve(matrix).kernel)


def characteristic(e: Element) -> Element:
    """e 的特征元 h"""
    return jmv_triple(e).h


# ==================== 特征元的共轭 ====================

@dataclass
class CharacteristicConjugation:
    """exp(ad z)：固定 e，把 h 映到 h'"""
    z: Element
    automorphism: ExactMatrix
    eigenvalues: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {'z': element_to_dict(self.z), 'ad_h_eigenvalues': list(self.eigenvalues)}


def _lower_image(e: Element) -> Subspace:
    """[e, g_{-1}]"""
    algebra = e.algebra
    return Subspace(algebra, [e.bracket(b).coords for b in algebra.component_subspace(-1).elements()])


def u_subspace(e: Element) -> Subspace:
    """Z_{g_0}(e) ∩ [g_{-1}, e]"""
    algebra = e.algebra
    return algebra.centralizer(e, within=algebra.component_subspace(0)).intersect(_lower_image(e))


def _integer_eigenspaces(h: Element, space: Subspace) -> Dict[int, Subspace]:
    """ad h 在不变子空间上的正整数特征空间"""
    algebra = h.algebra
    if space.dim == 0:
        return {}
    columns = []
    for x in space.elements():
        coords = space.coordinates_of(h.bracket(x))
        if coords is None:
            raise ComputationError("subspace is not ad(h)-invariant")
        columns.append(coords)
    local = ExactMatrix.from_columns(columns, algebra.field, nrows=space.dim)
    pieces: Dict[int, Subspace] = {}
    total = 0
    k = 1
    while total < space.dim and k <= 2 * algebra.dim + 2:
        shifted = local - ExactMatrix.identity(space.dim, algebra.field).scale(k)
        kernel = rank_kernel_solve(shifted).kernel
        if kernel:
            pieces[k] = Subspace(algebra, [space.combination(c).coords for c in kernel])
            total += len(kernel)
        k += 1
    if total != space.dim:
        raise ComputationError("ad(h) has non-positive or non-integer eigenvalues on u(e)")
    return pieces


def conjugate_characteristics(e: Element, h: Element, h_prime: Element) -> CharacteristicConjugation:
    """
    构造 exp(ad z)，z ∈ u(e)，固定 e 并把 h 映到 h'。

    z grows one ad h eigenvalue at a time: with r = exp(ad z)h − h', the
    component of r in the eigenvalue-k piece is divided by k and added to z.
    """
    algebra = e.algebra
    image = _lower_image(e)
    for candidate in (h, h_prime):
        if candidate.bracket(e) != e.scale(2) or not candidate.is_homogeneous(0):
            raise PreconditionError("not characteristics of the same e")
        if not image.contains(candidate):
            raise PreconditionError("not characteristics of the same e: h is not in [e, g_-1]")
    u = u_subspace(e)
    v = h_prime - h
    if not u.contains(v):
        raise PreconditionError("not characteristics of the same e")
    pieces = _integer_eigenspaces(h, u)

    z = algebra.zero()
    if not v.is_zero():
        for k in range(1, max(pieces) + 1):
            if k not in pieces:
                continue
            residual = Element(algebra, nilpotent_exp(algebra.ad_matrix(z)).apply(h.coords)) - h_prime
            part = _component_in(residual, pieces, k)
            z = z + part.scale(QQ(1, k))
    automorphism = nilpotent_exp(algebra.ad_matrix(z))
    if Element(algebra, automorphism.apply(h.coords)) != h_prime:
        raise ComputationError("iteration did not reach h'")
    if Element(algebra, automorphism.apply(e.coords)) != e:
        raise ComputationError("conjugating automorphism moved e")
    return CharacteristicConjugation(z, automorphism, sorted(pieces))


def _component_in(x: Element, pieces: Dict[int, Subspace], k: int) -> Element:
    """x ∈ u 在 ad h 特征值 k 分量上的投影"""
    ordered = sorted(pieces)
    vectors = [row for key in ordered for row in pieces[key].basis]
    matrix = ExactMatrix.from_columns(vectors, x.algebra.field, nrows=x.algebra.dim)
    result = rank_kernel_solve(matrix, x.coords)
    if not result.consistent:
        raise ComputationError("residual left u(e)")
    offset = 0
    for key in ordered:
        size = pieces[key].dim
        if key == k:
            return pieces[key].combination(result.solution[offset:offset + size])
        offset += size
    return x.algebra.zero()


# ==================== 缩放判据 ====================

@dataclass
class ScalingCertificate:
    """e 沿 ad(h/2) 特征空间的分量（全部特征值为正）"""
    components: List[Tuple[Fraction, Element]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {'components': [{'eigenvalue': str(value), 'component': element_to_dict(x)}
                               for value, x in self.components]}


def _distinct_rational_roots(poly: Poly) -> List[Fraction]:
    coefficients = poly.all_coeffs()
    if not all(c.is_real for c in coefficients):
        raise ComputationError("e is not a sum of ad(h) eigenvectors with real eigenvalues")
    _, factors = Poly(coefficients, T, domain=QQ).factor_list()
    roots = []
    for factor, multiplicity in factors:
        if factor.degree() != 1 or multiplicity != 1:
            raise ComputationError("e is not a sum of ad(h) eigenvectors")
        a, b = factor.all_coeffs()
        root = -b / a
        roots.append(Fraction(int(root.p), int(root.q)))
    return sorted(roots)


def scaling_diagnostic(e: Element, h: Element) -> ScalingCertificate:
    """
    证明 0 属于 Ad_{G_0}(e) 的闭包：e 只在 ad(h/2) 的正特征值上有分量。

    Components come from Lagrange projections built on the annihilating
    polynomial of e under ad h, which must split into distinct rational
    linear factors.
    """
    algebra = e.algebra
    if e.is_zero():
        return ScalingCertificate()
    ad_h = algebra.ad_matrix(h)
    roots = _distinct_rational_roots(local_minimal_polynomial(ad_h, e.coords))
    identity = ExactMatrix.identity(algebra.dim, algebra.field)
    exact = {r: algebra.field.convert(QQ(r.numerator, r.denominator)) for r in roots}

    components = []
    for root in roots:
        value = root / 2
        if value <= 0:
            raise ComputationError(f"non-positive ad(h/2) eigenvalue {value} carries a component of e")
        vector = e.coords
        for other in roots:
            if other == root:
                continue
            shifted = ad_h - identity.scale(exact[other])
            scale = algebra.field.one / (exact[root] - exact[other])
            vector = tuple(c * scale for c in shifted.apply(vector))
        components.append((value, Element(algebra, vector)))
    return ScalingCertificate(components)
