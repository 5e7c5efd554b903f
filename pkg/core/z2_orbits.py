# -*- coding: utf-8 -*-
"""
Z₂ 分次轨道模块
Cartan 分解 g = k ⊕ p、标准 Cartan 子空间判定、椭圆/向量部分分解、限制 Weyl 群，
以及混合元素 h_k + h_p + e_n 的共轭判定流水线。
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from sympy import Poly, QQ
from sympy.polys.matrices import DomainMatrix

from core.catalog import SemilinearMap, cartan_involution
from core.exceptions import ComputationError, PreconditionError
from core.jordan import characteristic, is_semisimple, jordan_decompose
from core.lie import Element, GradedAlgebra, Subspace, element_to_dict
from core.linalg import (T, ExactMatrix, definiteness, kernel_basis, minimal_polynomial,
                         nilpotency_index, nilpotent_exp, solve)
from core.nilclass import (EXACT, characteristic_fingerprint, classify_nilpotent_orbits,
                           is_real_diagonalizable, rational_spectrum)
from core.scalars import format_scalar

logger = logging.getLogger(__name__)

CONJUGATE = 'conjugate'
DISTINCT = 'distinct'
UNDECIDED = 'undecided'

DISCONNECTED_CAVEAT = "Z_{G_0}(e_s) may be disconnected"


# ==================== Cartan 分解 ====================

@dataclass
class CartanDecomposition:
    """g = k ⊕ p：τ_u 在实形式上的 ±1 特征空间"""
    algebra: GradedAlgebra
    involution: ExactMatrix
    k: Subspace
    p: Subspace
    pieces: Dict[Tuple[str, int], Subspace]
    killing: Dict[str, str] = field(default_factory=dict)

    def piece(self, part: str, degree: int) -> Subspace:
        return self.pieces[(part, degree % self.algebra.modulus)]

    def apply(self, x: Element) -> Element:
        return Element(self.algebra, self.involution.apply(x.coords))

    def project(self, x: Element) -> Tuple[Element, Element]:
        """(k 分量, p 分量)"""
        image = self.apply(x)
        half = self.algebra.field.convert(QQ(1, 2))
        return (x + image).scale(half), (x - image).scale(half)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'k': self.k.to_strings(),
            'p': self.p.to_strings(),
            'dims': {f"{part}{degree}": s.dim for (part, degree), s in sorted(self.pieces.items())},
            'killing': dict(self.killing),
        }


def _real_matrix(algebra: GradedAlgebra, tau_u: Union[ExactMatrix, SemilinearMap]) -> ExactMatrix:
    matrix = tau_u.matrix if isinstance(tau_u, SemilinearMap) else tau_u
    if matrix.shape != (algebra.dim, algebra.dim):
        raise PreconditionError("τ_u acts on a space of the wrong dimension")
    if matrix.field != algebra.field:
        if not matrix.is_rational():
            raise PreconditionError("τ_u does not preserve the real form")
        matrix = matrix.to_rational().convert_to(algebra.field)
    return matrix


def cartan_decomposition(algebra: GradedAlgebra, tau_u: Union[ExactMatrix, SemilinearMap, None] = None,
                         check_definiteness: bool = True) -> CartanDecomposition:
    """
    τ_u 的 ±1 特征空间及其与各次分量的交。

    Bracket inclusions are verified exactly; Killing definiteness on k and p
    is checked through symmetric pivots unless disabled.
    """
    theta = cartan_involution(algebra) if tau_u is None else _real_matrix(algebra, tau_u)
    identity = ExactMatrix.identity(algebra.dim, algebra.field)
    if theta @ theta != identity:
        raise PreconditionError("τ_u is not an involution on g")
    k = Subspace(algebra, kernel_basis(theta - identity))
    p = Subspace(algebra, kernel_basis(theta + identity))

    for left, right, target, name in ((k, k, k, '[k,k] ⊆ k'), (k, p, p, '[k,p] ⊆ p'), (p, p, k, '[p,p] ⊆ k')):
        for x in left.basis:
            for y in right.basis:
                value = algebra.bracket_coords(x, y)
                if any(value) and not target.contains(value):
                    raise ComputationError(f"Cartan decomposition fails {name}")

    pieces = {(part, i): space.intersect(algebra.component_subspace(i))
              for part, space in (('k', k), ('p', p)) for i in range(algebra.modulus)}
    decomposition = CartanDecomposition(algebra, theta, k, p, pieces)
    if check_definiteness:
        decomposition.killing = {
            'k': definiteness(algebra.killing_gram_of(k.elements()), algebra.field),
            'p': definiteness(algebra.killing_gram_of(p.elements()), algebra.field),
        }
        if decomposition.killing['k'] != 'negative' or decomposition.killing['p'] != 'positive':
            raise PreconditionError(f"τ_u is not a Cartan involution: Killing form is "
                                    f"{decomposition.killing['k']} on k, {decomposition.killing['p']} on p")
    logger.debug(f"{algebra.name}: dim k = {k.dim}, dim p = {p.dim}")
    return decomposition


# ==================== 标准 Cartan 子空间 ====================

def standard_cartan_check(h_sub: Subspace, decomposition: CartanDecomposition,
                          seed: int = 0, samples: int = 3) -> bool:
    """g_1 中交换的半单子空间是否 τ_u-不变"""
    algebra = decomposition.algebra
    if h_sub.dim == 0:
        raise PreconditionError("not a Cartan-subspace candidate: the subspace is zero")
    if not h_sub.is_subspace_of(algebra.component_subspace(1)):
        raise PreconditionError("not a Cartan-subspace candidate: not inside g_1")
    if not algebra.is_abelian(h_sub):
        raise PreconditionError("not a Cartan-subspace candidate: not abelian")
    rng = np.random.default_rng(seed)
    candidates = h_sub.elements()
    if h_sub.dim > 1:
        candidates += [h_sub.combination([int(w) for w in rng.integers(-3, 4, size=h_sub.dim)])
                       for _ in range(samples)]
    for x in candidates:
        if not x.is_zero() and not is_semisimple(x):
            raise PreconditionError(f"not a Cartan-subspace candidate: {x.describe()} is not semisimple")
    image = Subspace(algebra, [decomposition.involution.apply(v) for v in h_sub.basis])
    return image == h_sub


def split_cartan_subspace(h_sub: Subspace, decomposition: CartanDecomposition) -> Tuple[Subspace, Subspace]:
    """τ_u-不变子空间的分解 (h ∩ k) ⊕ (h ∩ p)"""
    compact = h_sub.intersect(decomposition.k)
    vector = h_sub.intersect(decomposition.p)
    if compact.dim + vector.dim != h_sub.dim:
        raise PreconditionError("subspace is not τ_u-invariant")
    return compact, vector


# ==================== 椭圆/向量部分 ====================

def is_elliptic(x: Element) -> bool:
    """ad x 半单且谱为纯虚数：μ(t) = t^ε q(t²)，q 的根全为负实数"""
    coefficients = minimal_polynomial(x.algebra.ad_matrix(x)).all_coeffs()
    if not all(c.is_real for c in coefficients):
        return False
    mu = Poly(coefficients, T, domain=QQ)
    if mu.sqf_part().degree() != mu.degree():
        return False
    zero_root = mu.eval(0) == 0
    if mu.count_roots() != (1 if zero_root else 0):
        return False
    reduced = mu.quo(Poly(T, T, domain=QQ)) if zero_root else mu
    if reduced.degree() % 2:
        return False
    coeffs = reduced.all_coeffs()
    if any(coeffs[1::2]):
        return False
    q = Poly(coeffs[::2], T, domain=QQ)
    return q.count_roots() == q.degree() and q.count_roots(0, None) == 0


def elliptic_vector_split(s: Element, decomposition: CartanDecomposition) -> Tuple[Element, Element]:
    """半单元素 s = h_k + h_p（要求两部分交换）"""
    if not is_semisimple(s):
        raise PreconditionError("element is not semisimple")
    h_k, h_p = decomposition.project(s)
    if not h_k.bracket(h_p).is_zero():
        raise PreconditionError("not in standard position; conjugate first")
    if not h_k.is_zero() and not is_elliptic(h_k):
        raise ComputationError("compact part has non-imaginary ad-spectrum")
    if not h_p.is_zero() and not is_real_diagonalizable(h_p):
        raise ComputationError("vector part has non-real ad-spectrum")
    return h_k, h_p


def standard_position_search(s: Element, decomposition: CartanDecomposition,
                             max_length: int = 2) -> Optional[Tuple[ExactMatrix, List[Dict[str, str]]]]:
    """
    在 exp(ad t·b)（b 为 g_0 中幂零基向量）生成的短字中搜索使 s 处于标准位置的共轭。

    Returns the automorphism and its word, or None when the bounded search fails.
    """
    algebra = s.algebra
    movers = [b for b in algebra.component_subspace(0).elements()
              if nilpotency_index(algebra.ad_matrix(b)) is not None]
    scales = [QQ(1, 2), QQ(1), QQ(-1, 2), QQ(-1)]
    steps = [(b, c, nilpotent_exp(algebra.ad_matrix(b.scale(c)))) for b in movers for c in scales]
    for length in range(1, max_length + 1):
        for word in product(steps, repeat=length):
            automorphism = ExactMatrix.identity(algebra.dim, algebra.field)
            for _, _, step in word:
                automorphism = step @ automorphism
            moved = Element(algebra, automorphism.apply(s.coords))
            h_k, h_p = decomposition.project(moved)
            if h_k.bracket(h_p).is_zero():
                return automorphism, [{'element': b.describe(), 'scale': str(c)} for b, c, _ in word]
    return None


# ==================== 限制 Weyl 群 ====================

@dataclass
class FiniteReflectionGroup:
    """Cartan 子空间上的有限反射群（矩阵作用于 ambient 的基坐标）"""
    ambient: Subspace
    generators: List[ExactMatrix]
    elements: List[ExactMatrix]
    words: List[Tuple[int, ...]]

    @property
    def order(self) -> int:
        return len(self.elements)

    def coordinates(self, x: Element) -> Tuple:
        coords = self.ambient.coordinates_of(x)
        if coords is None:
            raise PreconditionError(f"{x.describe()} is not in the Cartan subspace")
        return coords

    def act(self, index: int, x: Element) -> Element:
        return self.ambient.combination(self.elements[index].apply(self.coordinates(x)))

    def conjugating_word(self, x: Element, y: Element) -> Optional[Tuple[int, ...]]:
        source, target = self.coordinates(x), self.coordinates(y)
        for g, word in zip(self.elements, self.words):
            if tuple(g.apply(source)) == tuple(target):
                return word
        return None

    def to_dict(self) -> Dict[str, Any]:
        field_ = self.ambient.algebra.field
        return {
            'rank': self.ambient.dim,
            'order': self.order,
            'generators': [[[format_scalar(v, field_) for v in row] for row in g.to_rows()]
                           for g in self.generators],
        }


def _refine(algebra: GradedAlgebra, pieces: List[Tuple[Subspace, Tuple]],
            operator: ExactMatrix) -> List[Tuple[Subspace, Tuple]]:
    refined = []
    for space, values in pieces:
        columns = []
        for w in space.basis:
            coords = space.coordinates_of(operator.apply(w))
            if coords is None:
                raise ComputationError("joint eigenspace is not invariant")
            columns.append(coords)
        local = ExactMatrix.from_columns(columns, algebra.field, nrows=space.dim)
        identity = ExactMatrix.identity(space.dim, algebra.field)
        for value in rational_spectrum(local):
            exact = algebra.field.convert(QQ(value.numerator, value.denominator))
            kernel = kernel_basis(local - identity.scale(exact))
            refined.append((Subspace(algebra, [space.combination(c).coords for c in kernel]),
                            values + (exact,)))
    return refined


def restricted_weyl_group(h_sub: Subspace, decomposition: CartanDecomposition,
                          allow_graded_generators: bool = True,
                          centralizing: Optional[Element] = None,
                          max_group_order: int = 1000000) -> FiniteReflectionGroup:
    """
    限制根的反射生成的群。

    Roots are read off up to sign from the joint eigenvalues of the commuting
    products ad(h_j) ad(h_l). A reflection is kept when its root lines meet
    k (or k ∩ g_0 when graded generators are not allowed, further cut down to
    the centralizer of ``centralizing``), so it comes from a compact
    one-parameter subgroup.
    """
    algebra = decomposition.algebra
    rank = h_sub.dim
    identity = ExactMatrix.identity(rank, algebra.field)
    if rank == 0:
        return FiniteReflectionGroup(h_sub, [], [identity], [()])
    if not algebra.is_abelian(h_sub):
        raise PreconditionError("Cartan subspace is not abelian")
    in_k, in_p = h_sub.is_subspace_of(decomposition.k), h_sub.is_subspace_of(decomposition.p)
    if not (in_k or in_p):
        raise PreconditionError("split the Cartan subspace into its k and p parts first")
    sign = 1 if in_p else -1

    basis = h_sub.elements()
    ad = [algebra.ad_matrix(x) for x in basis]
    pairs = [(j, l) for j in range(rank) for l in range(j, rank)]
    pieces = [(algebra.full_space(), ())]
    for j, l in pairs:
        pieces = _refine(algebra, pieces, ad[j] @ ad[l])

    gram = [[v * sign for v in row] for row in algebra.killing_gram_of(basis)]
    gram_inverse = ExactMatrix(DomainMatrix([[algebra.field.convert(v) for v in row] for row in gram],
                                            (rank, rank), algebra.field).inv())
    compact = decomposition.k if allow_graded_generators else decomposition.piece('k', 0)
    if centralizing is not None and not centralizing.is_zero():
        compact = algebra.centralizer(centralizing, within=compact)

    generators: List[ExactMatrix] = []
    for space, values in pieces:
        if not any(values) or space.intersect(compact).dim == 0:
            continue
        products = dict(zip(pairs, values))
        dok = {}
        for (j, l), v in products.items():
            if v:
                dok[(j, l)] = v * sign
                dok[(l, j)] = v * sign
        root_square = ExactMatrix.from_dok(dok, (rank, rank), algebra.field)
        scaled = gram_inverse @ root_square
        reflection = identity - scaled.scale(algebra.field.convert(2) / scaled.trace())
        if reflection @ reflection != identity:
            raise ComputationError("restricted root reflection is not an involution")
        if reflection not in generators:
            generators.append(reflection)

    elements, words = [identity], [()]
    seen = {_matrix_key(identity): 0}
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for index, generator in enumerate(generators):
            candidate = generator @ elements[current]
            key = _matrix_key(candidate)
            if key in seen:
                continue
            seen[key] = len(elements)
            elements.append(candidate)
            words.append((index,) + words[current])
            if len(elements) > max_group_order:
                raise ComputationError("not finite - input not a Cartan subspace")
            queue.append(len(elements) - 1)
    logger.debug(f"restricted Weyl group: {len(generators)} reflections, order {len(elements)}")
    return FiniteReflectionGroup(h_sub, generators, elements, words)


def _matrix_key(matrix: ExactMatrix) -> Tuple:
    return tuple(tuple(row) for row in matrix.to_rows())


def semisimple_orbit_equivalent(x: Element, y: Element, group: FiniteReflectionGroup) -> bool:
    """∃ w ∈ W：w·x = y"""
    return group.conjugating_word(x, y) is not None


# ==================== 混合元素 ====================

@dataclass
class MixedNormalForm:
    """x = h_k + h_p + e_n（必要时先做记录在案的共轭）"""
    x: Element
    semisimple: Element
    e_n: Element
    h_k: Optional[Element] = None
    h_p: Optional[Element] = None
    conjugation: List[Dict[str, str]] = field(default_factory=list)
    commuting: bool = True

    @property
    def standard_position(self) -> bool:
        return self.h_k is not None

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'x': element_to_dict(self.x),
            'semisimple': element_to_dict(self.semisimple),
            'e_n': element_to_dict(self.e_n),
            'standard_position': self.standard_position,
            'commuting': self.commuting,
        }
        if self.standard_position:
            doc['h_k'] = element_to_dict(self.h_k)
            doc['h_p'] = element_to_dict(self.h_p)
        if self.conjugation:
            doc['conjugation'] = list(self.conjugation)
        return doc


def mixed_normal_form(x: Element, decomposition: CartanDecomposition, max_length: int = 2) -> MixedNormalForm:
    pair = jordan_decompose(x)
    semisimple, nilpotent = pair.semisimple, pair.nilpotent
    zero = x.algebra.zero()
    if semisimple.is_zero():
        return MixedNormalForm(x, semisimple, nilpotent, zero, zero)
    try:
        h_k, h_p = elliptic_vector_split(semisimple, decomposition)
        word: List[Dict[str, str]] = []
    except PreconditionError as e:
        if not is_semisimple(semisimple):
            raise
        found = standard_position_search(semisimple, decomposition, max_length)
        if found is None:
            logger.info(f"{x.describe()}: {e}")
            return MixedNormalForm(x, semisimple, nilpotent)
        automorphism, word = found
        x = Element(x.algebra, automorphism.apply(x.coords))
        pair = jordan_decompose(x)
        semisimple, nilpotent = pair.semisimple, pair.nilpotent
        h_k, h_p = elliptic_vector_split(semisimple, decomposition)
    commuting = all(a.bracket(b).is_zero() for a, b in ((h_k, h_p), (h_k, nilpotent), (h_p, nilpotent)))
    return MixedNormalForm(x, semisimple, nilpotent, h_k, h_p, word, commuting)


@dataclass
class MixedVerdict:
    verdict: str
    stage: str
    certificate: Dict[str, Any] = field(default_factory=dict)
    caveats: List[str] = field(default_factory=list)
    forms: Tuple[Optional[MixedNormalForm], Optional[MixedNormalForm]] = (None, None)

    def to_dict(self) -> Dict[str, Any]:
        doc = {'verdict': self.verdict, 'stage': self.stage, 'certificate': dict(self.certificate),
               'caveats': list(self.caveats)}
        if self.forms[0] is not None:
            doc['normal_forms'] = [f.to_dict() for f in self.forms]
        return doc


def _maximal_abelian(x: Element, within: Subspace) -> Subspace:
    """贪心扩张 span{x} 为 within 中的极大交换子空间"""
    algebra = x.algebra
    chosen = [x]
    while True:
        current = Subspace.span(algebra, chosen)
        pool = algebra.centralizer(chosen, within=within)
        extra = next((v for v in pool.elements() if not current.contains(v)), None)
        if extra is None:
            return current
        chosen.append(extra)


def _compare_parts(a: Element, b: Element, part: str, decomposition: CartanDecomposition,
                   centralizing: Optional[Element], options: Dict[str, Any]) -> Tuple[str, Dict[str, Any]]:
    if a.is_zero() and b.is_zero():
        return 'equal', {}
    if a.is_zero() != b.is_zero():
        return DISTINCT, {'reason': f"{part}-part vanishes for only one element"}
    if a == b:
        return 'equal', {}
    algebra = decomposition.algebra
    if minimal_polynomial(algebra.ad_matrix(a)) != minimal_polynomial(algebra.ad_matrix(b)):
        return DISTINCT, {'reason': f"{part}-parts have different ad minimal polynomials"}
    within = decomposition.piece(part, 1)
    cartan = _maximal_abelian(a, within)
    if not cartan.contains(b):
        cartan = _maximal_abelian(b, within)
        if not cartan.contains(a):
            return UNDECIDED, {'reason': f"{part}-parts lie in different Cartan subspaces"}
    group = restricted_weyl_group(cartan, decomposition,
                                  allow_graded_generators=options.get('allow_graded_generators', True),
                                  centralizing=centralizing,
                                  max_group_order=options.get('max_group_order', 1000000))
    word = group.conjugating_word(a, b)
    if word is None:
        return DISTINCT, {'reason': f"{part}-parts are not Weyl-equivalent", 'weyl_order': group.order}
    return 'equivalent', {'word': list(word), 'weyl_order': group.order}


def _to_host(host_images: List[Element], host: GradedAlgebra, x: Element) -> Element:
    matrix = ExactMatrix.from_columns([im.coords for im in host_images], x.algebra.field, nrows=x.algebra.dim)
    coords = solve(matrix, x.coords)
    if coords is None:
        raise ComputationError("nilpotent part is not in the centralizer of the semisimple part")
    return Element(host, coords)


def _compare_nilpotent(fx: MixedNormalForm, fy: MixedNormalForm, options: Dict[str, Any]) -> MixedVerdict:
    forms = (fx, fy)
    en, fn = fx.e_n, fy.e_n
    if en.is_zero() and fn.is_zero():
        return MixedVerdict(CONJUGATE, 'semisimple', {'word': []}, forms=forms)
    if en.is_zero() != fn.is_zero():
        return MixedVerdict(DISTINCT, 'nilpotent', {'reason': 'nilpotent part vanishes for only one element'},
                            forms=forms)
    algebra = en.algebra
    semisimple = fx.semisimple
    if semisimple.is_zero():
        host, e_x, e_y = algebra, en, fn
    else:
        pieces = {i: algebra.centralizer(semisimple, within=algebra.component_subspace(i))
                  for i in range(algebra.modulus)}
        host, images = algebra.subalgebra(pieces, f"Z({algebra.name})")
        e_x, e_y = _to_host(images, host, en), _to_host(images, host, fn)

    h_x, h_y = characteristic(e_x), characteristic(e_y)
    if characteristic_fingerprint(h_x) != characteristic_fingerprint(h_y):
        return MixedVerdict(DISTINCT, 'nilpotent', {'reason': 'characteristic fingerprints differ'}, forms=forms)
    if h_x != h_y:
        return MixedVerdict(UNDECIDED, 'characteristic-conjugacy',
                            {'reason': 'equal fingerprints but different characteristics'}, forms=forms)

    sampling = {k: v for k, v in options.items() if k not in ('allow_graded_generators', 'max_group_order')}
    classification = classify_nilpotent_orbits(host, h_x, **sampling)
    data, report = classification.genericity, classification.components
    px, py = data.coordinates_of(e_x), data.coordinates_of(e_y)
    cx = report.locate(px) if px is not None else None
    cy = report.locate(py) if py is not None else None
    certificate = {'orbit_count': classification.orbit_count, 'mode': report.mode,
                   'classes': [cx, cy]}
    if cx is None or cy is None:
        return MixedVerdict(UNDECIDED, 'nilpotent', dict(certificate, reason='component not certified'),
                            list(report.caveats), forms)
    if cx == cy:
        return MixedVerdict(CONJUGATE, 'nilpotent', certificate, list(report.caveats), forms)
    if report.mode != EXACT:
        return MixedVerdict(UNDECIDED, 'nilpotent', certificate, list(report.caveats), forms)
    if not semisimple.is_zero():
        return MixedVerdict(UNDECIDED, 'centralizer-components', certificate, [DISCONNECTED_CAVEAT], forms)
    return MixedVerdict(DISTINCT, 'nilpotent', certificate, forms=forms)


def mixed_conjugacy(x: Element, y: Element, decomposition: Optional[CartanDecomposition] = None,
                    **options) -> MixedVerdict:
    """
    Z₂ 情形下两个元素是否 G_0-共轭。

    Elliptic parts are compared first, then vector parts inside the
    centralizer of the elliptic part, then nilpotent parts in the graded
    centralizer of the common semisimple part.
    """
    algebra = x.algebra
    if algebra.modulus != 2:
        raise PreconditionError("mixed conjugacy is implemented for Z_2 gradings")
    if x == y:
        return MixedVerdict(CONJUGATE, 'identity', {'word': []})
    decomposition = decomposition or cartan_decomposition(algebra)
    max_length = options.pop('max_search_length', 2)
    fx = mixed_normal_form(x, decomposition, max_length)
    fy = mixed_normal_form(y, decomposition, max_length)
    forms = (fx, fy)
    if not fx.standard_position or not fy.standard_position:
        return MixedVerdict(UNDECIDED, 'standard-position',
                            {'reason': 'bounded conjugation search did not reach standard position'},
                            forms=forms)

    verdict, certificate = _compare_parts(fx.h_k, fy.h_k, 'k', decomposition, None, options)
    if verdict in (DISTINCT, UNDECIDED):
        return MixedVerdict(verdict, 'elliptic', certificate, forms=forms)
    if verdict == 'equivalent':
        if fx.h_p.is_zero() and fy.h_p.is_zero() and fx.e_n.is_zero() and fy.e_n.is_zero():
            return MixedVerdict(CONJUGATE, 'elliptic', certificate, forms=forms)
        return MixedVerdict(UNDECIDED, 'elliptic-transport', certificate, forms=forms)

    verdict, certificate = _compare_parts(fx.h_p, fy.h_p, 'p', decomposition, fx.h_k, options)
    if verdict in (DISTINCT, UNDECIDED):
        return MixedVerdict(verdict, 'vector', certificate, forms=forms)
    if verdict == 'equivalent':
        if fx.e_n.is_zero() and fy.e_n.is_zero():
            return MixedVerdict(CONJUGATE, 'vector', certificate, forms=forms)
        return MixedVerdict(UNDECIDED, 'vector-transport', certificate, forms=forms)

    return _compare_nilpotent(fx, fy, options)
