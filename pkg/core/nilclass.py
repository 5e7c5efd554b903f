# -*- coding: utf-8 -*-
"""
次数 1 幂零轨道分类模块
切片 g(h/2) 与 g(h, φ)、换位子切片、支撑、一般性矩阵与奇异子式、
半代数集 {Σ P_l² > 0} 的连通分支分析、中心陪集合并，以及完整的分类流水线。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, QQ, sympify
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

from core.catalog import automorphism_failure
from core.exceptions import ComputationError, InputError, PreconditionError
from core.jordan import is_nilpotent, jmv_triple
from core.lie import CenterData, Element, GradedAlgebra, Subspace, element_to_dict
from core.linalg import T, ExactMatrix, kernel_basis, minimal_polynomial, nilpotency_index, nilpotent_exp
from core.polynomials import component_index, make_poly, positive_components, positive_on_unit_interval
from core.scalars import format_scalar, is_real, real_part

logger = logging.getLogger(__name__)

EXACT = 'exact'
HEURISTIC = 'heuristic'
UPPER_BOUND_CAVEAT = "class_count is an upper bound on component count"
TRUNCATED_CAVEAT = ("minor enumeration was truncated at max_minors: the set analysed is only "
                    "part of the generic locus")


# ==================== 谱与特征空间 ====================

def _fraction(value, field) -> Fraction:
    if not is_real(value, field):
        raise PreconditionError(f"expected a real scalar, got {format_scalar(value, field)}")
    return Fraction(format_scalar(real_part(value, field), QQ))


def _qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def rational_spectrum(matrix: ExactMatrix) -> List[Fraction]:
    """半单矩阵的特征值；极小多项式须分裂为互异的有理一次因子"""
    coefficients = minimal_polynomial(matrix).all_coeffs()
    if not all(c.is_real for c in coefficients):
        raise PreconditionError("ad(h) has non-real eigenvalues")
    _, factors = Poly(coefficients, T, domain=QQ).factor_list()
    values, offending = [], []
    for factor, multiplicity in factors:
        if multiplicity != 1:
            raise PreconditionError("h is not semisimple")
        if factor.degree() != 1:
            offending.append(str(factor.as_expr()))
            continue
        a, b = factor.all_coeffs()
        root = -b / a
        values.append(Fraction(int(root.p), int(root.q)))
    if offending:
        raise PreconditionError(f"ad(h) has irrational eigenvalue factors: {', '.join(offending)}")
    return sorted(values)


def integer_spectrum(matrix: ExactMatrix) -> List[int]:
    values = rational_spectrum(matrix)
    offending = [str(v) for v in values if v.denominator != 1]
    if offending:
        raise PreconditionError(f"ad(h) has non-integer eigenvalues: {', '.join(offending)}")
    return [int(v) for v in values]


def is_real_diagonalizable(x: Element) -> bool:
    """ad x 可在 ℝ 上对角化：极小多项式无平方因子且根全为实数"""
    coefficients = minimal_polynomial(x.algebra.ad_matrix(x)).all_coeffs()
    if not all(c.is_real for c in coefficients):
        return False
    mu = Poly(coefficients, T, domain=QQ)
    return mu.sqf_part().degree() == mu.degree() and mu.count_roots() == mu.degree()


def joint_eigenspace(algebra: GradedAlgebra, operators: Sequence[Tuple[ExactMatrix, Any]],
                     within: Subspace) -> Subspace:
    """{x ∈ within : A x = λ x 对每个 (A, λ)}"""
    if within.dim == 0 or not operators:
        return within
    columns = []
    for w in within.basis:
        column = []
        for matrix, value in operators:
            value = algebra.field.convert(value)
            column.extend(a - value * b for a, b in zip(matrix.apply(w), w))
        columns.append(column)
    system = ExactMatrix.from_columns(columns, algebra.field, nrows=algebra.dim * len(operators))
    return Subspace(algebra, [within.combination(c).coords for c in kernel_basis(system)])


# ==================== 切片 ====================

@dataclass
class SliceDecomposition:
    """整数分次子代数：k ↦ g_k（落在 g_{k mod m} 中）"""
    algebra: GradedAlgebra
    components: Dict[int, Subspace]
    h: Optional[Element] = None
    cartan: List[Element] = field(default_factory=list)
    phi: List[Fraction] = field(default_factory=list)
    g1_holds: Optional[bool] = None
    g01_holds: Optional[bool] = None

    def piece(self, k: int) -> Subspace:
        return self.components.get(k) or Subspace(self.algebra)

    def dims(self) -> Dict[int, int]:
        return {k: s.dim for k, s in sorted(self.components.items()) if s.dim}

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.components.values())

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            'dims': {str(k): d for k, d in self.dims().items()},
            'components': {str(k): self.components[k].to_strings() for k in sorted(self.components)},
        }
        if self.h is not None:
            doc['h'] = element_to_dict(self.h)
        if self.cartan:
            doc['cartan'] = [element_to_dict(u) for u in self.cartan]
            doc['phi'] = [str(v) for v in self.phi]
        if self.g1_holds is not None:
            doc['g1_holds'] = self.g1_holds
            doc['g01_holds'] = self.g01_holds
        return doc


def _check_additivity(decomposition: SliceDecomposition):
    algebra = decomposition.algebra
    keys = sorted(decomposition.components)
    for ai, a in enumerate(keys):
        for b in keys[ai:]:
            target = decomposition.piece(a + b)
            left, right = decomposition.components[a].basis, decomposition.components[b].basis
            for xi, x in enumerate(left):
                for yi, y in enumerate(right):
                    if a == b and yi <= xi:
                        continue
                    value = algebra.bracket_coords(x, y)
                    if any(value) and not target.contains(value):
                        raise ComputationError(f"bracket of slice pieces {a} and {b} leaves piece {a + b}")


def slice_decomposition(h: Element) -> SliceDecomposition:
    """
    g(h/2) = ⊕_k g_k(h/2)，g_k(h/2) = {x ∈ g_{k mod m} : [h/2, x] = kx}。

    ad(h) must have integer spectrum; its odd eigenvalues give half-integer
    ad(h/2) eigenvalues and stay outside the slice.
    """
    algebra = h.algebra
    if not h.is_homogeneous(0):
        raise PreconditionError("h must lie in g_0")
    ad_h = algebra.ad_matrix(h)
    components = {}
    for value in integer_spectrum(ad_h):
        if value % 2:
            continue
        k = value // 2
        piece = joint_eigenspace(algebra, [(ad_h, value)], algebra.component_subspace(k))
        if piece.dim:
            components[k] = piece
    decomposition = SliceDecomposition(algebra, components, h=h)
    _check_additivity(decomposition)
    logger.debug(f"slice of {h.describe()}: dims {decomposition.dims()}")
    return decomposition


def slice_commutant(decomposition: SliceDecomposition) -> SliceDecomposition:
    """换位子切片 g(h/2)′，并记录 g_1′ = g_1 与 [g_0′, g_1] = g_1 是否成立"""
    algebra = decomposition.algebra
    keys = sorted(decomposition.components)
    vectors: Dict[int, List] = {}
    for ai, a in enumerate(keys):
        for b in keys[ai:]:
            if a + b not in decomposition.components:
                continue
            left, right = decomposition.components[a].basis, decomposition.components[b].basis
            for xi, x in enumerate(left):
                for yi, y in enumerate(right):
                    if a == b and yi <= xi:
                        continue
                    value = algebra.bracket_coords(x, y)
                    if any(value):
                        vectors.setdefault(a + b, []).append(value)
    components = {k: Subspace(algebra, v) for k, v in vectors.items()}
    result = SliceDecomposition(algebra, {k: s for k, s in components.items() if s.dim},
                                h=decomposition.h, cartan=decomposition.cartan, phi=decomposition.phi)
    degree_one = decomposition.piece(1)
    result.g1_holds = result.piece(1) == degree_one
    image = [algebra.bracket_coords(f, e) for f in result.piece(0).basis for e in degree_one.basis]
    result.g01_holds = Subspace(algebra, image) == degree_one
    return result


# ==================== 支撑 ====================

@dataclass
class SupportData:
    """g(h, φ) 的换位子 s(h) 及局部平坦性"""
    e: Element
    cartan: Subspace
    cartan_basis: List[Element]
    phi: List[Fraction]
    grading: SliceDecomposition
    support: SliceDecomposition
    locally_flat: bool
    maximality_verified: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'e': element_to_dict(self.e),
            'cartan': [element_to_dict(u) for u in self.cartan_basis],
            'phi': [str(v) for v in self.phi],
            'support': self.support.to_dict(),
            'locally_flat': self.locally_flat,
            'maximality_verified': self.maximality_verified,
        }


def _character(u: Element, e: Element) -> Any:
    """[u, e] = φ(u) e 中的 φ(u)"""
    image = u.bracket(e)
    pivot = e.support[0]
    ratio = image.coords[pivot] / e.coords[pivot]
    if image != e.scale(ratio):
        raise ComputationError(f"[u, e] is not proportional to e for u = {u.describe()}")
    return ratio


def support(e: Element, seed: int = 0, attempts: int = 16) -> SupportData:
    """
    贪心地把 span{h(e)} 扩张为 N_{g_0}(e) 中可在 ℝ 上对角化的交换子空间，
    读出 φ，构造 g(h, φ) 及其换位子。

    Candidates are basis vectors of the current centralizer inside the
    normalizer followed by small random integer combinations.
    """
    algebra = e.algebra
    h = jmv_triple(e).h
    normalizer = algebra.normalizer_of_line(e, within=algebra.component_subspace(0))
    rng = np.random.default_rng(seed)
    chosen = [h]
    maximal = False
    while True:
        current = Subspace.span(algebra, chosen)
        pool = algebra.centralizer(chosen, within=normalizer)
        if pool.dim == current.dim:
            maximal = True
            break
        candidates = pool.elements()
        for _ in range(attempts):
            weights = rng.integers(-2, 3, size=pool.dim)
            candidates.append(pool.combination([int(w) for w in weights]))
        found = next((c for c in candidates
                      if not current.contains(c) and is_real_diagonalizable(c)), None)
        if found is None:
            break
        chosen.append(found)

    phi_exact = [_character(u, e) for u in chosen]
    phi = [_fraction(v, algebra.field) for v in phi_exact]
    matrices = [algebra.ad_matrix(u) for u in chosen]
    components = {}
    for value in integer_spectrum(matrices[0]):
        if value % 2:
            continue
        k = value // 2
        operators = [(m, algebra.field.convert(k) * v) for m, v in zip(matrices, phi_exact)]
        piece = joint_eigenspace(algebra, operators, algebra.component_subspace(k))
        if piece.dim:
            components[k] = piece
    grading = SliceDecomposition(algebra, components, h=h, cartan=chosen, phi=phi)
    commutant = slice_commutant(grading)
    flat = commutant.piece(0).dim == commutant.piece(1).dim
    if not maximal:
        logger.warning("Cartan subspace extension stopped without a maximality certificate")
    return SupportData(e, Subspace.span(algebra, chosen), chosen, phi, grading, commutant,
                       locally_flat=flat, maximality_verified=maximal)


# ==================== 一般性矩阵 ====================

class GenericityData:
    """
    b_ik(a) = Σ_j a_j c_ij^k，其中 [f_i, e_j] = Σ_k c_ij^k e_k。

    Rows are indexed by the basis f_1..f_m of g_0(h/2)′, columns by the basis
    e_1..e_n of g_1(h/2). Minors are the n×n minors over every choice of n rows.
    """

    def __init__(self, n: int, matrix: Optional[List[List]] = None,
                 minors: Optional[List] = None, algebra: Optional[GradedAlgebra] = None,
                 e_space: Optional[Subspace] = None, f_space: Optional[Subspace] = None,
                 max_minors: int = 4096):
        if n < 1:
            raise InputError("genericity data needs at least one variable")
        self.n = n
        self.variables = tuple(f"a{j + 1}" for j in range(n))
        self.ring, *self.gens = ring(",".join(self.variables), QQ)
        self.matrix = matrix or []
        self.algebra = algebra
        self.e_space = e_space
        self.f_space = f_space
        self.max_minors = max_minors
        self.truncated = False
        self._minors = minors

    @property
    def m(self) -> int:
        return len(self.matrix)

    @classmethod
    def from_slices(cls, decomposition: SliceDecomposition, commutant: SliceDecomposition,
                    max_minors: int = 4096) -> 'GenericityData':
        algebra = decomposition.algebra
        if algebra.field != QQ:
            raise PreconditionError("genericity data needs a real algebra over QQ")
        e_space = decomposition.piece(1)
        f_space = commutant.piece(0)
        n, m = e_space.dim, f_space.dim
        if n == 0:
            raise PreconditionError("g_1(h/2) is zero")
        if m < n:
            raise ComputationError("slice violates m >= n: not a characteristic slice")
        data = cls(n, algebra=algebra, e_space=e_space, f_space=f_space, max_minors=max_minors)
        e_basis = e_space.elements()
        for f in f_space.elements():
            row = [data.ring.zero] * n
            for j, ej in enumerate(e_basis):
                coords = e_space.coordinates_of(f.bracket(ej))
                if coords is None:
                    raise ComputationError("[g_0(h/2)', g_1(h/2)] leaves g_1(h/2)")
                for k, c in enumerate(coords):
                    if c:
                        row[k] += data.gens[j] * c
            data.matrix.append(row)
        return data

    @classmethod
    def from_polynomials(cls, polynomials: Sequence[str], n: int) -> 'GenericityData':
        """直接给出奇异子式 P_l（不对应任何代数）"""
        data = cls(n)
        data._minors = [data.ring.from_expr(sympify(p)) for p in polynomials]
        return data

    @property
    def minor_count(self) -> int:
        return comb(self.m, self.n) if self.matrix else len(self.minors)

    @property
    def minors(self) -> List:
        if self._minors is None:
            domain = self.ring.to_domain()
            selections = combinations(range(self.m), self.n)
            total = comb(self.m, self.n)
            if total > self.max_minors:
                self.truncated = True
                logger.warning(f"only {self.max_minors} of {total} minors enumerated")
            minors = []
            for rows in islice(selections, self.max_minors):
                block = DomainMatrix([[self.matrix[r][c] for c in range(self.n)] for r in rows],
                                     (self.n, self.n), domain)
                value = block.det()
                if value:
                    minors.append(value)
            self._minors = minors
        return self._minors

    @property
    def square_sum(self):
        return sum((p ** 2 for p in self.minors), self.ring.zero)

    def coordinates_of(self, x: Element) -> Optional[Tuple[Fraction, ...]]:
        if self.e_space is None:
            raise PreconditionError("genericity data is not attached to an algebra")
        coords = self.e_space.coordinates_of(x)
        if coords is None:
            return None
        return tuple(_fraction(c, self.algebra.field) for c in coords)

    def element_at(self, point: Sequence[Fraction]) -> Optional[Element]:
        if self.e_space is None:
            return None
        return self.e_space.combination([_qq(Fraction(v)) for v in point])

    def rank_at(self, point: Sequence[Fraction]) -> int:
        """rank b(x)"""
        values = [_qq(Fraction(v)) for v in point]
        rows = [[entry(*values) for entry in row] for row in self.matrix]
        if not rows:
            return 0
        return DomainMatrix(rows, (self.m, self.n), QQ).rank()

    def evaluate(self, polynomial, point: Sequence[Fraction]):
        values = [_qq(Fraction(v)) for v in point]
        return polynomial(*values)

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'n': self.n,
            'm': self.m,
            'variables': list(self.variables),
            'matrix': [[str(entry.as_expr()) for entry in row] for row in self.matrix],
            'minors': [str(p.as_expr()) for p in self.minors],
        }
        if self.truncated:
            doc['minors_truncated'] = True
        return doc


def is_generic(e: Element, data: Optional[GenericityData] = None) -> bool:
    """[g_0(h/2)′, e] = g_1(h/2)，即 rank b(e) = n"""
    if e.is_zero():
        return False
    if data is None:
        decomposition = slice_decomposition(jmv_triple(e).h)
        data = GenericityData.from_slices(decomposition, slice_commutant(decomposition))
    point = data.coordinates_of(e)
    if point is None:
        return False
    return data.rank_at(point) == data.n


# ==================== 连通分支 ====================

class SegmentCertifier:
    """把 S = Σ P_l² 限制到线段上，用 Sturm 计数证明 S > 0 在 [0, 1] 上成立"""

    def __init__(self, data: GenericityData):
        self.data = data
        self.square_sum = data.square_sum
        self.terms = list(self.square_sum.terms())
        self.line_ring, self.t = ring("t", QQ)

    def restrict(self, start: Sequence[Fraction], end: Sequence[Fraction]) -> Poly:
        lines = [self.t * (_qq(b) - _qq(a)) + _qq(a) for a, b in zip(start, end)]
        total = self.line_ring.zero
        for monom, coeff in self.terms:
            term = self.line_ring(coeff)
            for line, power in zip(lines, monom):
                if power:
                    term *= line ** power
            total += term
        return Poly(total.as_expr(), T, domain=QQ)

    def certify(self, start: Sequence[Fraction], end: Sequence[Fraction]) -> bool:
        if tuple(start) == tuple(end):
            return self.value(start) > 0
        return positive_on_unit_interval(self.restrict(start, end))

    def value(self, point: Sequence[Fraction]):
        return self.data.evaluate(self.square_sum, point)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> bool:
        a, b = self.find(i), self.find(j)
        if a == b:
            return False
        self.parent[max(a, b)] = min(a, b)
        return True


@dataclass
class ComponentClass:
    """一个连通分支（或被证明连通的样本类）"""
    point: Tuple[Fraction, ...]
    members: List[Tuple[Fraction, ...]] = field(default_factory=list)
    element: Optional[Element] = None
    certificate: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        doc = {'point': [str(v) for v in self.point], 'size': len(self.members) or 1}
        if self.element is not None:
            doc['representative'] = element_to_dict(self.element)
        if self.certificate:
            doc['certificate'] = self.certificate
        return doc


@dataclass
class ComponentReport:
    mode: str
    classes: List[ComponentClass]
    certificates: List[Dict[str, Any]] = field(default_factory=list)
    caveats: List[str] = field(default_factory=list)
    sample_count: int = 0
    data: Optional[GenericityData] = field(default=None, repr=False)
    polynomial: Optional[Poly] = field(default=None, repr=False)
    segment_attempts: int = 8
    coset_sizes: List[int] = field(default_factory=list)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def representatives(self) -> List[Element]:
        return [c.element for c in self.classes if c.element is not None]

    def locate(self, point: Sequence[Fraction], certifier: Optional[SegmentCertifier] = None) -> Optional[int]:
        """点所在的类；无法证明时返回 None"""
        point = tuple(point)
        if self.mode == EXACT:
            index = component_index(self.polynomial, point[0])
            if index is None:
                return None
            gap = positive_components(self.polynomial)[index].gap
            for position, cls in enumerate(self.classes):
                if gap in cls.certificate.get('gaps', [cls.certificate.get('gap')]):
                    return position
            return None
        certifier = certifier or SegmentCertifier(self.data)
        for position, cls in enumerate(self.classes):
            if point in cls.members:
                return position
        for position, cls in enumerate(self.classes):
            for member in cls.members[:self.segment_attempts]:
                if certifier.certify(point, member):
                    return position
        return None

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'mode': self.mode,
            'class_count': self.class_count,
            'classes': [c.to_dict() for c in self.classes],
            'certificates': list(self.certificates),
            'caveats': list(self.caveats),
        }
        if self.sample_count:
            doc['sample_count'] = self.sample_count
        if self.coset_sizes:
            doc['coset_sizes'] = list(self.coset_sizes)
        return doc


def _univariate(data: GenericityData) -> Poly:
    square_sum = data.square_sum
    degree = max((monom[0] for monom in square_sum.monoms()), default=0)
    coefficients = [QQ.zero] * (degree + 1)
    for (power,), coeff in square_sum.terms():
        coefficients[power] = coeff
    return make_poly(coefficients)


def _exact_components(data: GenericityData) -> ComponentReport:
    poly = _univariate(data)
    if poly.is_zero:
        raise ComputationError("set appears empty - check genericity data")
    classes = []
    for component in positive_components(poly):
        point = (component.sample,)
        certificate = dict(component.to_dict(), kind='interval', gap=component.gap)
        classes.append(ComponentClass(point, [point], data.element_at(point), certificate))
    if not classes:
        raise ComputationError("set appears empty - check genericity data")
    if data.truncated:
        logger.warning("exact root isolation ran on a truncated minor set")
        return ComponentReport(HEURISTIC, classes, [c.certificate for c in classes], [TRUNCATED_CAVEAT],
                               data=data, polynomial=poly)
    return ComponentReport(EXACT, classes, [c.certificate for c in classes], data=data, polynomial=poly)


def _draw_points(certifier: SegmentCertifier, n: int, seed: int, samples: int, box: int,
                 grid_bits: int, max_rounds: int, threads: int) -> Tuple[List[Tuple[Fraction, ...]], int]:
    rng = np.random.default_rng(seed)
    drawn = 0
    for _ in range(max_rounds):
        denominator = 2 ** grid_bits
        raw = rng.integers(-box * denominator, box * denominator + 1, size=(samples, n))
        candidates = list(dict.fromkeys(tuple(Fraction(int(v), denominator) for v in row) for row in raw))
        drawn += samples
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                values = list(pool.map(certifier.value, candidates))
        else:
            values = [certifier.value(p) for p in candidates]
        points = [p for p, v in zip(candidates, values) if v > 0]
        if points:
            return points, drawn
        grid_bits += 1
    return [], drawn


def _nilpotent_movers(data: GenericityData) -> List[Element]:
    if data.f_space is None:
        return []
    return [f for f in data.f_space.elements()
            if nilpotency_index(data.algebra.ad_matrix(f)) is not None]


def component_analysis(data: GenericityData, seed: int = 0, samples: int = 256, box: int = 3,
                       grid_bits: int = 4, orbit_moves: int = 8, max_rounds: int = 4,
                       segment_attempts: int = 8, threads: int = 1, **_ignored) -> ComponentReport:
    """
    {x ∈ g_1(h/2) : Σ P_l(x)² > 0} 的连通分支。

    One variable is handled exactly by real root isolation. Otherwise rational
    grid points are sampled and merged when the segment between them is
    certified to stay in the set, or when an orbit move of a class member
    lands in a segment-connected position to another class.
    """
    if data.n == 1:
        return _exact_components(data)

    certifier = SegmentCertifier(data)
    points, drawn = _draw_points(certifier, data.n, seed, samples, box, grid_bits, max_rounds, threads)
    if not points:
        raise ComputationError("set appears empty - check genericity data")

    classes = _UnionFind(len(points))
    certificates: List[Dict[str, Any]] = []
    for i in range(1, len(points)):
        groups: Dict[int, List[int]] = {}
        for j in range(i):
            groups.setdefault(classes.find(j), []).append(j)
        for root in sorted(groups):
            if classes.find(i) == classes.find(root):
                continue
            for j in groups[root][:segment_attempts]:
                if certifier.certify(points[i], points[j]):
                    classes.union(i, j)
                    certificates.append({'kind': 'segment', 'from': j, 'to': i})
                    break

    movers = _nilpotent_movers(data)
    rng = np.random.default_rng(seed + 1)
    for _ in range(orbit_moves if movers else 0):
        roots = sorted({classes.find(i) for i in range(len(points))})
        if len(roots) == 1:
            break
        for root in roots:
            mover = movers[int(rng.integers(len(movers)))]
            scale = Fraction(int(rng.integers(1, 4)) * (1 if rng.integers(2) else -1), 2)
            moved = nilpotent_exp(data.algebra.ad_matrix(mover.scale(_qq(scale)))).apply(
                data.element_at(points[root]).coords)
            target = data.coordinates_of(Element(data.algebra, moved))
            if target is None or not certifier.value(target) > 0:
                if data.truncated:
                    # a truncated minor set is not G_0-stable
                    continue
                raise ComputationError("orbit move left the generic set")
            for other in roots:
                if classes.find(other) == classes.find(root):
                    continue
                members = [j for j in range(len(points)) if classes.find(j) == classes.find(other)]
                if any(certifier.certify(target, points[j]) for j in members[:segment_attempts]):
                    classes.union(root, other)
                    certificates.append({'kind': 'orbit', 'from': root, 'to': other,
                                         'mover': element_to_dict(mover), 'scale': str(scale)})

    grouped: Dict[int, List[int]] = {}
    for i in range(len(points)):
        grouped.setdefault(classes.find(i), []).append(i)
    result = []
    for members in grouped.values():
        best = min(members, key=lambda j: (sum(v * v for v in points[j]), j))
        member_points = [points[j] for j in members]
        result.append(ComponentClass(points[best], member_points, data.element_at(points[best])))
    result.sort(key=lambda c: c.point)
    logger.info(f"component analysis: {len(points)} points in the set, {len(result)} classes")
    caveats = [UPPER_BOUND_CAVEAT] + ([TRUNCATED_CAVEAT] if data.truncated else [])
    return ComponentReport(HEURISTIC, result, certificates, caveats,
                           sample_count=drawn, data=data, segment_attempts=segment_attempts)


# ==================== 中心陪集 ====================

def center_cosets(e_k: Optional[Element], center: CenterData, report: ComponentReport) -> ComponentReport:
    """
    用 Z(G_0) 的生成元合并分支：像与某个类相连时两类合并。

    ``coset_sizes`` records, per merged class, how many identity-component
    classes it absorbed; the entry for the class of e_k is its coset count.
    """
    if center.is_trivial() or report.data is None or report.data.algebra is None:
        return report
    data = report.data
    algebra = data.algebra
    for g in center.generators:
        failure = automorphism_failure(algebra, g)
        if failure is not None:
            i, j = failure
            raise ComputationError(f"center generator is not an automorphism: fails on "
                                   f"[{algebra.labels[i]}, {algebra.labels[j]}]")

    certifier = SegmentCertifier(data) if report.mode == HEURISTIC else None
    merged = _UnionFind(report.class_count)
    certificates = list(report.certificates)
    for position, cls in enumerate(report.classes):
        for index, g in enumerate(center.generators):
            image = data.coordinates_of(Element(algebra, g.apply(cls.element.coords)))
            if image is None:
                raise ComputationError("center generator does not preserve g_1(h/2)")
            target = report.locate(image, certifier)
            if target is not None and merged.union(position, target):
                certificates.append({'kind': 'center', 'generator': index, 'from': position, 'to': target})

    grouped: Dict[int, List[int]] = {}
    for position in range(report.class_count):
        grouped.setdefault(merged.find(position), []).append(position)
    classes, sizes = [], []
    for root in sorted(grouped):
        head = report.classes[root]
        members = [m for p in grouped[root] for m in report.classes[p].members]
        certificate = dict(head.certificate)
        if len(grouped[root]) > 1:
            certificate['merged'] = grouped[root]
            if report.mode == EXACT:
                certificate['gaps'] = [report.classes[p].certificate.get('gap') for p in grouped[root]]
        classes.append(ComponentClass(head.point, members, head.element, certificate))
        sizes.append(len(grouped[root]))
    if e_k is not None:
        point = data.coordinates_of(e_k)
        home = report.locate(point, certifier) if point is not None else None
        if home is not None:
            logger.debug(f"e_k meets {len(grouped[merged.find(home)])} component(s) under the center")
    return ComponentReport(report.mode, classes, certificates, list(report.caveats), report.sample_count,
                           data, report.polynomial, report.segment_attempts, sizes)


# ==================== 特征指纹 ====================

@dataclass(frozen=True)
class Fingerprint:
    """ad h 在每个 g_k 上的谱（特征值, 重数）以及切片维数"""
    spectra: Tuple[Tuple[int, Tuple[Tuple[str, int], ...]], ...]
    slice_dims: Tuple[Tuple[int, int], ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'spectra': {str(k): [[v, d] for v, d in entries] for k, entries in self.spectra},
            'slice_dims': {str(k): d for k, d in self.slice_dims},
        }


def characteristic_fingerprint(h: Element) -> Fingerprint:
    algebra = h.algebra
    ad_h = algebra.ad_matrix(h)
    values = rational_spectrum(ad_h)
    spectra = []
    for k in range(algebra.modulus):
        component = algebra.component_subspace(k)
        entries = []
        for v in values:
            dim = joint_eigenspace(algebra, [(ad_h, _qq(v))], component).dim
            if dim:
                entries.append((str(v), dim))
        spectra.append((k, tuple(entries)))
    try:
        dims = tuple(slice_decomposition(h).dims().items())
    except PreconditionError:
        dims = ()
    return Fingerprint(tuple(spectra), dims)


def characteristics_distinct(h1: Element, h2: Element) -> str:
    """不同指纹 ⇒ 不共轭；相同指纹只能判定为可能共轭"""
    if characteristic_fingerprint(h1) != characteristic_fingerprint(h2):
        return 'distinct'
    return 'possibly-conjugate'


# ==================== 分类流水线 ====================

@dataclass
class OrbitClassification:
    h: Element
    decomposition: SliceDecomposition
    commutant: SliceDecomposition
    genericity: GenericityData
    components: ComponentReport
    fingerprint: Fingerprint
    orbits: List[Dict[str, Any]]

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def representatives(self) -> List[Element]:
        return [o['element'] for o in self.orbits]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'mode': self.components.mode,
            'orbit_count': self.orbit_count,
            'orbits': [{k: v for k, v in o.items() if k != 'element'} for o in self.orbits],
            'caveats': list(self.components.caveats),
            'slice_dims': {str(k): d for k, d in self.decomposition.dims().items()},
            'fingerprint': self.fingerprint.to_dict(),
        }


def classify_nilpotent_orbits(algebra: GradedAlgebra, h: Element, **options) -> OrbitClassification:
    """
    次数 1 幂零元在特征元 h 上的轨道代表元。

    Every representative is re-verified: nilpotent, generic in the slice and
    carrying a characteristic with the same fingerprint as h.
    """
    if h.algebra is not algebra:
        raise InputError("h does not belong to the algebra")
    decomposition = slice_decomposition(h)
    commutant = slice_commutant(decomposition)
    if not commutant.g1_holds:
        raise ComputationError("g_1(h/2)' differs from g_1(h/2): h is not a characteristic")
    if not commutant.g01_holds:
        raise ComputationError("[g_0(h/2)', g_1(h/2)] differs from g_1(h/2): h is not a characteristic")
    data = GenericityData.from_slices(decomposition, commutant, options.get('max_minors', 4096))
    report = component_analysis(data, **options)
    anchor = report.classes[0].element if report.classes else None
    report = center_cosets(anchor, algebra.center, report)

    fingerprint = characteristic_fingerprint(h)
    orbits = []
    for cls in report.classes:
        rep = cls.element
        checks = {
            'nilpotent': is_nilpotent(rep),
            'generic': data.rank_at(cls.point) == data.n,
            'characteristic_fingerprint': characteristic_fingerprint(jmv_triple(rep).h) == fingerprint,
        }
        orbits.append({
            'element': rep,
            'representative': element_to_dict(rep),
            'verified': all(checks.values()),
            'checks': checks,
            'certificates': [cls.certificate] if cls.certificate else [],
        })
        if not all(checks.values()):
            logger.warning(f"representative {rep.describe()} failed verification: {checks}")
    logger.info(f"{algebra.name}: {len(orbits)} nilpotent orbit(s) at h = {h.describe()} ({report.mode})")
    return OrbitClassification(h, decomposition, commutant, data, report, fingerprint, orbits)
