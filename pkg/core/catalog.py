# -*- coding: utf-8 -*-
"""
代数目录模块
构造具体的分次代数：sl(n,ℝ)、作为 Z₂ 分次实代数的 sl₂(ℂ)、分裂 e₇（Z₂ 分次）
与分裂 e₈（Z₃ 分次）；以及复化、分次自同构 θ 与紧形式共轭 τ_u。

e₇ and e₈ use graded exterior models:

    e₇ = sl(8) ⊕ Λ⁴ℝ⁸               (degrees 0, 1; m = 2)
    e₈ = sl(9) ⊕ Λ³ℝ⁹ ⊕ Λ⁶ℝ⁹        (degrees 0, 1, 2; m = 3)

sl acts on multivectors as derivations, [g_1, g_1] is the wedge product
(for e₈) or the trace-dual moment map (for e₇), and [g_1, g_{-1}] → sl is
the trace-dual moment map with its trace removed.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sympy import Poly, QQ, QQ_I

from core.exceptions import (CalibrationError, ComputationError, InputError,
                             PreconditionError)
from core.exterior import (complement, derivation_action, index_tuples, sort_sign,
                           tuple_positions, volume_sign)
from core.lie import BracketTable, CenterData, GradedAlgebra, Subspace
from core.linalg import T, ExactMatrix, kernel_basis, minimal_polynomial
from core.scalars import format_scalar, parse_rational, real_part, sign

logger = logging.getLogger(__name__)

DIFFERENCE = 'difference'
SUM = 'sum'


# ==================== sl(n) 基 ====================

class SlBasis:
    """
    sl(n) 的标准基：E_ij (i<j)，H_1..H_{n-1}，E_ij (i>j)。

    Matrices are dicts keyed by 1-based (row, column).
    """

    def __init__(self, n: int):
        if n < 2:
            raise InputError(f"sl(n) needs n >= 2, got {n}")
        self.n = n
        self.upper = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        self.lower = [(i, j) for i in range(1, n + 1) for j in range(1, i)]
        self.cartan_offset = len(self.upper)
        self.lower_offset = self.cartan_offset + n - 1
        self.unit_index = {pair: p for p, pair in enumerate(self.upper)}
        self.unit_index.update({pair: self.lower_offset + p for p, pair in enumerate(self.lower)})
        self.dim = n * n - 1
        self.labels = self._labels()
        self._matrices = [self._matrix(idx) for idx in range(self.dim)]

    def _labels(self) -> List[str]:
        if self.n == 2:
            return ['E', 'H', 'F']
        sep = '_' if self.n >= 10 else ''
        units = lambda pairs: [f"E{i}{sep}{j}" for i, j in pairs]
        return units(self.upper) + [f"H{t}" for t in range(1, self.n)] + units(self.lower)

    @property
    def cartan_indices(self) -> List[int]:
        return list(range(self.cartan_offset, self.lower_offset))

    def _matrix(self, idx: int) -> Dict[Tuple[int, int], Any]:
        if idx < self.cartan_offset:
            return {self.upper[idx]: QQ.one}
        if idx < self.lower_offset:
            t = idx - self.cartan_offset + 1
            return {(t, t): QQ.one, (t + 1, t + 1): -QQ.one}
        return {self.lower[idx - self.lower_offset]: QQ.one}

    def matrix_of(self, idx: int) -> Dict[Tuple[int, int], Any]:
        return self._matrices[idx]

    def coords_of(self, matrix: Dict[Tuple[int, int], Any]) -> Dict[int, Any]:
        """无迹矩阵在基下的坐标（对角部分取部分和）"""
        out: Dict[int, Any] = {}
        diagonal = [QQ.zero] * (self.n + 1)
        for (r, c), value in matrix.items():
            if not value:
                continue
            if r == c:
                diagonal[r] += QQ.convert(value)
            else:
                idx = self.unit_index[(r, c)]
                out[idx] = out.get(idx, QQ.zero) + QQ.convert(value)
        if sum(diagonal, QQ.zero):
            raise ComputationError("matrix is not traceless")
        running = QQ.zero
        for t in range(1, self.n):
            running += diagonal[t]
            if running:
                out[self.cartan_offset + t - 1] = running
        return {k: v for k, v in out.items() if v}

    def brackets(self) -> BracketTable:
        table: BracketTable = {}
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                value = _commutator(self._matrices[a], self._matrices[b])
                if value:
                    table[(a, b)] = self.coords_of(value)
        return table

    def root_of(self, idx: int) -> Optional[Tuple[int, ...]]:
        """E_ij 的根 ε_i − ε_j；Cartan 元返回 None"""
        if self.cartan_offset <= idx < self.lower_offset:
            return None
        (i, j), = self._matrices[idx].keys()
        vector = [0] * self.n
        vector[i - 1] += 1
        vector[j - 1] -= 1
        return tuple(vector)


def _commutator(a: Dict, b: Dict) -> Dict[Tuple[int, int], Any]:
    out: Dict[Tuple[int, int], Any] = {}
    for (r, k), x in a.items():
        for (k2, c), y in b.items():
            if k == k2:
                out[(r, c)] = out.get((r, c), QQ.zero) + x * y
    for (r, k), y in b.items():
        for (k2, c), x in a.items():
            if k == k2:
                out[(r, c)] = out.get((r, c), QQ.zero) - y * x
    return {key: v for key, v in out.items() if v}


def _traceless_diagonal(indices: Sequence[int], n: int, scale=QQ.one) -> Dict[Tuple[int, int], Any]:
    """scale · (diag(1_I) − |I|/n · Id)"""
    shift = QQ(len(indices), n)
    chosen = set(indices)
    return {(r, r): scale * ((QQ.one if r in chosen else QQ.zero) - shift) for r in range(1, n + 1)}


# ==================== sl(n) 与分次 ====================

def parse_grading(grading: str, n: int) -> Tuple[int, Optional[List[int]]]:
    """'trivial' → (1, None)；'diag-involution(+,-,…)' → (2, signs)"""
    text = grading.replace(' ', '')
    if text == 'trivial':
        return 1, None
    prefix = 'diag-involution('
    if not (text.startswith(prefix) and text.endswith(')')):
        raise InputError(f"unknown grading {grading!r}; expected 'trivial' or 'diag-involution(signs)'")
    tokens = [tok for tok in text[len(prefix):-1].split(',')]
    mapping = {'+': 1, '+1': 1, '1': 1, '-': -1, '-1': -1, '−': -1}
    signs = []
    for tok in tokens:
        if tok not in mapping:
            raise InputError(f"invalid sign {tok!r} in {grading!r}")
        signs.append(mapping[tok])
    if len(signs) != n:
        raise InputError(f"grading {grading!r} has {len(signs)} signs, sl({n}) needs {n}")
    return 2, signs


def build_sl(n: int, grading: str = 'trivial', name: Optional[str] = None) -> GradedAlgebra:
    """sl(n,ℝ)，平凡分次或对角对合分次"""
    sl = SlBasis(n)
    modulus, signs = parse_grading(grading, n)
    degrees = []
    for idx in range(sl.dim):
        if signs is None or sl.cartan_offset <= idx < sl.lower_offset:
            degrees.append(0)
        else:
            (i, j), = sl.matrix_of(idx).keys()
            degrees.append(0 if signs[i - 1] * signs[j - 1] == 1 else 1)
    # Ad(−I) of SL(2k) is the identity on g
    center = CenterData([ExactMatrix.identity(sl.dim, QQ)], [1]) if n % 2 == 0 else None
    extras = {'cartan': sl.cartan_indices, 'root_ambient': n, 'grading': grading}
    return GradedAlgebra(name or f"sl{n}", QQ, modulus, sl.labels, degrees, sl.brackets(),
                         center=center, extras=extras)


def build_sl2c_real() -> GradedAlgebra:
    """
    sl₂(ℂ) 作为 6 维实代数，g_0 = sl₂(ℝ)，g_1 = i·sl₂(ℝ)。

    θ below is the Cartan involution: the composite of the Chevalley
    involution of sl₂(ℂ) with complex conjugation.
    """
    sl = SlBasis(2)
    # real basis H, E, F followed by iH, iE, iF
    position = {sl.labels.index(label): p for p, label in enumerate(['H', 'E', 'F'])}
    brackets: BracketTable = {}
    for (a, b), terms in sl.brackets().items():
        a, b = position[a], position[b]
        real = {position[k]: c for k, c in terms.items()}
        brackets[(a, b)] = real
        brackets[(a, b + 3)] = {k + 3: c for k, c in real.items()}
        brackets[(a + 3, b)] = {k + 3: c for k, c in real.items()}
        brackets[(a + 3, b + 3)] = {k: -c for k, c in real.items()}
    labels = ['H', 'E', 'F', 'iH', 'iE', 'iF']
    # columns: H ↦ −H, E ↦ −F, F ↦ −E, iH ↦ iH, iE ↦ iF, iF ↦ iE
    cartan_involution = [[0, 0, '-1'], [2, 1, '-1'], [1, 2, '-1'],
                         [3, 3, '1'], [5, 4, '1'], [4, 5, '1']]
    extras = {'cartan_involution': cartan_involution, 'cartan': [0]}
    return GradedAlgebra('sl2c-real-z2', QQ, 2, labels, [0, 0, 0, 1, 1, 1], brackets,
                         extras=extras)


# ==================== e₇ 与 e₈ 的外代数模型 ====================

def _action_entries(sl: SlBasis, grade: int, offset: int) -> BracketTable:
    """[X, e_T] = X·e_T"""
    n = sl.n
    positions = tuple_positions(n, grade)
    out: BracketTable = {}
    for x in range(sl.dim):
        matrix = sl.matrix_of(x)
        for pos, indices in enumerate(index_tuples(n, grade)):
            image = derivation_action(matrix, indices)
            if image:
                out[(x, offset + pos)] = {offset + positions[s]: c for s, c in image.items()}
    return out


def _dual_action_entries(sl: SlBasis, grade: int, offset: int) -> BracketTable:
    """[X, u_T]，u_T = sign(T, T^c) e_{T^c}"""
    n = sl.n
    positions = tuple_positions(n, grade)
    out: BracketTable = {}
    for x in range(sl.dim):
        matrix = sl.matrix_of(x)
        for pos, indices in enumerate(index_tuples(n, grade)):
            s_t = volume_sign(indices, n)
            image = derivation_action(matrix, complement(indices, n))
            terms = {}
            for big, c in image.items():
                small = complement(big, n)
                terms[offset + positions[small]] = s_t * volume_sign(small, n) * c
            if terms:
                out[(x, offset + pos)] = terms
    return out


def _moment_pairs(first: Tuple[int, ...], second: Tuple[int, ...], n: int,
                  vol_sign: Callable[[Tuple[int, ...]], int]) -> Dict[Tuple[int, int], Any]:
    """
    无迹部分的 M，其中 M_ji = vol((E_ij e_first) ∧ w) 且 w = vol_sign(R)·e_{R^c} 对 R = second 的对偶。

    ``vol_sign(R)`` is the coefficient of vol in ``e_R ∧ w``; only the
    equal-tuple and single-swap cases are nonzero.
    """
    if first == second:
        return _traceless_diagonal(first, n, QQ(vol_sign(first)))
    missing = [j for j in first if j not in second]
    extra = [i for i in second if i not in first]
    if len(missing) != 1:
        return {}
    j, i = missing[0], extra[0]
    sigma = derivation_action({(i, j): QQ.one}, first).get(second, QQ.zero)
    return {(j, i): sigma * vol_sign(second)} if sigma else {}


def _assemble_e7() -> GradedAlgebra:
    sl = SlBasis(8)
    offset = sl.dim
    tuples = index_tuples(8, 4)
    brackets = sl.brackets()
    brackets.update(_action_entries(sl, 4, offset))
    for a, first in enumerate(tuples):
        for b in range(a + 1, len(tuples)):
            # e_R ∧ e_second is nonzero only for R = second^c
            matrix = _moment_pairs(first, complement(tuples[b], 8), 8, lambda r: volume_sign(r, 8))
            if matrix:
                brackets[(offset + a, offset + b)] = sl.coords_of(matrix)
    labels = sl.labels + ['e' + ''.join(map(str, t)) for t in tuples]
    degrees = [0] * sl.dim + [1] * len(tuples)
    extras = {'cartan': sl.cartan_indices, 'root_ambient': 8,
              'exterior_model': {'n': 8, 'k': 4, 'offset': offset}}
    # −I ∈ SL(8) acts trivially on sl8 and on Λ⁴ℝ⁸
    center = CenterData([ExactMatrix.identity(sl.dim + len(tuples), QQ)], [1])
    return GradedAlgebra('e7-split-z2', QQ, 2, labels, degrees, brackets, center=center, extras=extras)


def _e8_tables() -> Tuple[SlBasis, BracketTable, BracketTable]:
    """(sl9, 与常数无关的括号, 交叉括号 [e_T, u_T'] 取 c3 = 1)"""
    sl = SlBasis(9)
    first_offset = sl.dim
    second_offset = first_offset + 84
    tuples = index_tuples(9, 3)
    positions = tuple_positions(9, 3)
    base = sl.brackets()
    base.update(_action_entries(sl, 3, first_offset))
    base.update(_dual_action_entries(sl, 3, second_offset))
    for a, first in enumerate(tuples):
        for b in range(a + 1, len(tuples)):
            second = tuples[b]
            if set(first) & set(second):
                continue
            sigma, six = sort_sign(first + second)
            rest = complement(six, 9)
            # e_T ∧ e_T' = σ e_six = σ sign(rest, six) u_rest
            base[(first_offset + a, first_offset + b)] = {second_offset + positions[rest]: sigma * volume_sign(rest, 9)}
            # e^T ∧ e^T' = σ e^six, and e^six corresponds to sign(rest, six) e_rest
            base[(second_offset + a, second_offset + b)] = {first_offset + positions[rest]: sigma * volume_sign(rest, 9)}
    cross: BracketTable = {}
    for a, first in enumerate(tuples):
        for b, second in enumerate(tuples):
            matrix = _moment_pairs(first, second, 9, lambda r: 1)
            if matrix:
                cross[(first_offset + a, second_offset + b)] = sl.coords_of(matrix)
    return sl, base, cross


def _assemble_e8(sl: SlBasis, base: BracketTable, cross: BracketTable, c3) -> GradedAlgebra:
    brackets = dict(base)
    for key, terms in cross.items():
        brackets[key] = {k: c3 * c for k, c in terms.items()}
    tuples = index_tuples(9, 3)
    names = [''.join(map(str, t)) for t in tuples]
    labels = sl.labels + ['e' + s for s in names] + ['e^' + s for s in names]
    degrees = [0] * sl.dim + [1] * 84 + [2] * 84
    extras = {'cartan': sl.cartan_indices, 'root_ambient': 9,
              'exterior_model': {'n': 9, 'k': 3, 'offset': sl.dim, 'dual_offset': sl.dim + 84},
              'calibration': {'c1': '1', 'c2': '1', 'c3': format_scalar(c3)}}
    return GradedAlgebra('e8-split-z3', QQ, 3, labels, degrees, brackets, extras=extras)


def jacobi_sum(algebra: GradedAlgebra, a: int, b: int, c: int) -> Tuple:
    x, y, z = (algebra.basis_element(i).coords for i in (a, b, c))
    bc = algebra.bracket_coords
    terms = (bc(x, bc(y, z)), bc(y, bc(z, x)), bc(z, bc(x, y)))
    return tuple(p + q + r for p, q, r in zip(*terms))


def _check_calibration(algebra: GradedAlgebra, labels: Sequence[str]):
    indices = [algebra.index_of(label) for label in labels]
    for p in range(len(indices)):
        for q in range(p + 1, len(indices)):
            for r in range(q + 1, len(indices)):
                if any(jacobi_sum(algebra, indices[p], indices[q], indices[r])):
                    triple = (labels[p], labels[q], labels[r])
                    raise CalibrationError(f"Jacobi fails at {triple} after calibration of {algebra.name}")


E7_CALIBRATION = ['E12', 'H1', 'H4', 'E21', 'E58', 'e1234', 'e5678', 'e1256', 'e1357', 'e2468', 'e3478']
E8_CALIBRATION = ['E12', 'H1', 'H5', 'E31', 'E79', 'e123', 'e456', 'e147', 'e124',
                  'e^123', 'e^789', 'e^456', 'e^125']


def build_e7_split_z2() -> GradedAlgebra:
    algebra = _assemble_e7()
    _check_calibration(algebra, E7_CALIBRATION)
    return algebra


def build_e8_split_z3() -> GradedAlgebra:
    """e₈ 的 Z₃ 分次模型；交叉常数 c3 由 (e123, e456, e^123) 上的 Jacobi 恒等式确定"""
    sl, base, cross = _e8_tables()
    witness = [sl.dim + 0, sl.dim + tuple_positions(9, 3)[(4, 5, 6)], sl.dim + 84]
    without = jacobi_sum(_assemble_e8(sl, base, cross, QQ.zero), *witness)
    with_one = jacobi_sum(_assemble_e8(sl, base, cross, QQ.one), *witness)
    slope = [p - q for p, q in zip(with_one, without)]
    pivot = next((k for k, v in enumerate(slope) if v), None)
    if pivot is None:
        raise CalibrationError("Jacobi identity does not depend on the cross constant")
    c3 = -without[pivot] / slope[pivot]
    logger.debug(f"e8 cross constant calibrated to {c3}")
    algebra = _assemble_e8(sl, base, cross, c3)
    if any(jacobi_sum(algebra, *witness)):
        raise CalibrationError("calibration triple still violates Jacobi")
    _check_calibration(algebra, E8_CALIBRATION)
    return algebra


# ==================== 目录 ====================

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: Callable[[], GradedAlgebra]
    modulus: int
    degree_dims: Tuple[int, ...]
    description: str

    @property
    def dim(self) -> int:
        return sum(self.degree_dims)


CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry for entry in [
        CatalogEntry('sl2', lambda: build_sl(2), 1, (3,), "sl(2,R), trivial grading"),
        CatalogEntry('sl2-z2-diag', lambda: build_sl(2, 'diag-involution(+,-)', 'sl2-z2-diag'), 2, (1, 2),
                     "sl(2,R) graded by conjugation with diag(1,-1)"),
        CatalogEntry('sl2c-real-z2', build_sl2c_real, 2, (3, 3), "sl(2,C) as a real algebra, g_1 = i g_0"),
        CatalogEntry('sl8', lambda: build_sl(8), 1, (63,), "sl(8,R), trivial grading"),
        CatalogEntry('e7-split-z2', build_e7_split_z2, 2, (63, 70), "split e7 = sl(8) + wedge^4 R^8"),
        CatalogEntry('e8-split-z3', build_e8_split_z3, 3, (80, 84, 84),
                     "split e8 = sl(9) + wedge^3 R^9 + wedge^6 R^9"),
    ]
}


@lru_cache(maxsize=None)
def build_catalog(name: str) -> GradedAlgebra:
    """按名称构造目录代数（缓存；代数构造后不再修改）"""
    entry = CATALOG.get(name)
    if entry is None:
        raise InputError(f"unknown catalog algebra {name!r}; known: {sorted(CATALOG)}")
    logger.info(f"building catalog algebra {name}")
    return entry.builder()


def catalog_listing() -> List[Dict[str, Any]]:
    return [{'name': entry.name, 'dim': entry.dim, 'modulus': entry.modulus,
             'degree_dims': {str(k): d for k, d in enumerate(entry.degree_dims)},
             'description': entry.description}
            for entry in CATALOG.values()]


# ==================== 根系数据 ====================

def _canonical(vector: Sequence) -> Tuple[Fraction, ...]:
    mean = Fraction(sum(Fraction(v) for v in vector), len(vector))
    return tuple(Fraction(v) - mean for v in vector)


@dataclass
class RootDatum:
    """ε 坐标下的根（模 Σε_i = 0）"""
    ambient: int
    roots: List[Tuple[int, ...]] = field(default_factory=list)
    kinds: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.roots)

    def canonical_set(self) -> set:
        return {_canonical(r) for r in self.roots}

    def is_closed_under_negation(self) -> bool:
        canon = self.canonical_set()
        return all(tuple(-v for v in r) in canon for r in canon)

    def count(self, kind: str) -> int:
        return sum(1 for k in self.kinds if k == kind)

    def to_dict(self) -> Dict[str, Any]:
        return {'ambient': self.ambient, 'count': len(self.roots),
                'difference': self.count(DIFFERENCE), 'sum': self.count(SUM)}


def root_datum(name: str) -> RootDatum:
    """目录代数的根系（ε 坐标）"""
    if name in ('e7-split-z2', 'e8-split-z3'):
        n, k = (8, 4) if name == 'e7-split-z2' else (9, 3)
        datum = _difference_roots(n)
        for t in index_tuples(n, k):
            vector = tuple(1 if i in t else 0 for i in range(1, n + 1))
            datum.roots.append(vector)
            datum.kinds.append(SUM)
            if n == 9:
                datum.roots.append(tuple(-v for v in vector))
                datum.kinds.append(SUM)
        return datum
    algebra = build_catalog(name)
    if 'root_ambient' not in algebra.extras:
        raise PreconditionError(f"{name} carries no root datum")
    return _difference_roots(algebra.extras['root_ambient'])


def _difference_roots(n: int) -> RootDatum:
    datum = RootDatum(n)
    for i in range(n):
        for j in range(n):
            if i != j:
                vector = [0] * n
                vector[i], vector[j] = 1, -1
                datum.roots.append(tuple(vector))
                datum.kinds.append(DIFFERENCE)
    return datum


def functional_to_epsilon(values: Sequence, n: int) -> Tuple[Fraction, ...]:
    """由 α(H_t) = a_t − a_{t+1} 还原 ε 坐标（均值为零的代表）"""
    coords = [Fraction(0)]
    for v in values:
        v = real_part(v, QQ_I)
        coords.append(coords[-1] - Fraction(int(QQ.numer(v)), int(QQ.denom(v))))
    return _canonical(coords)


def _is_diagonal(matrix: ExactMatrix) -> bool:
    return all(i == j for i, j in matrix.to_dok())


def root_space_decomposition(algebra: GradedAlgebra, cartan: Subspace) -> Dict[Tuple, Subspace]:
    """
    关于 Cartan 子空间的同时特征空间分解。

    Keys are the values of the functional on the Cartan basis; the zero
    functional maps to the centralizer of the Cartan subspace.
    """
    if not algebra.is_abelian(cartan):
        raise PreconditionError("Cartan subspace is not abelian")
    ads = [algebra.ad_matrix(h) for h in cartan.elements()]
    zero = algebra.field.zero
    if all(_is_diagonal(m) for m in ads):
        groups: Dict[Tuple, List[int]] = {}
        for i in range(algebra.dim):
            groups.setdefault(tuple(m.entry(i, i) for m in ads), []).append(i)
        return {key: Subspace(algebra, [algebra.basis_element(i).coords for i in idxs])
                for key, idxs in groups.items()}

    spaces: List[Tuple[Tuple, Subspace]] = [((), algebra.full_space())]
    for m in ads:
        refined = []
        for key, space in spaces:
            columns = []
            for row in space.basis:
                coords = space.coordinates_of(m.apply(row))
                if coords is None:
                    raise PreconditionError("Cartan subspace is not ad-diagonalizable")
                columns.append(coords)
            local = ExactMatrix.from_columns(columns, algebra.field, nrows=space.dim)
            for value in _split_eigenvalues(local):
                shifted = local - ExactMatrix.identity(space.dim, algebra.field).scale(value)
                vectors = [space.combination(c).coords for c in kernel_basis(shifted)]
                refined.append((key + (value,), Subspace(algebra, vectors)))
        spaces = refined
    if sum(s.dim for _, s in spaces) != algebra.dim:
        raise PreconditionError("Cartan subspace is not ad-diagonalizable")
    return {key: space for key, space in spaces if space.dim}


def _split_eigenvalues(matrix: ExactMatrix) -> List:
    coefficients = minimal_polynomial(matrix).all_coeffs()
    if not all(c.is_real for c in coefficients):
        raise PreconditionError("ad(h) has non-real eigenvalues; not diagonalizable over the base field")
    _, factors = Poly(coefficients, T, domain=QQ).factor_list()
    values = []
    for factor, multiplicity in factors:
        if factor.degree() != 1 or multiplicity != 1:
            raise PreconditionError("ad(h) is not diagonalizable over the base field")
        a, b = factor.all_coeffs()
        values.append(matrix.field.convert(-b / a))
    return values


def root_functionals(algebra: GradedAlgebra) -> Dict[Tuple, Subspace]:
    """对目录代数使用其对角 Cartan"""
    cartan = algebra.extras.get('cartan')
    if cartan is None:
        raise PreconditionError(f"{algebra.name} carries no Cartan subalgebra")
    space = Subspace(algebra, [algebra.basis_element(i).coords for i in cartan])
    return root_space_decomposition(algebra, space)


# ==================== 半线性映射与 θ ====================

@dataclass(frozen=True)
class SemilinearMap:
    """v ↦ M·v（线性）或 v ↦ M·conj(v)（共轭线性），作用在复化代数的坐标上"""
    matrix: ExactMatrix
    conjugates: bool = False

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, vector: Sequence) -> Tuple:
        field = self.matrix.field
        if self.conjugates:
            vector = [QQ_I(QQ_I.convert(v).x, -QQ_I.convert(v).y) for v in vector]
        return tuple(field.convert(v) for v in self.matrix.apply([field.convert(v) for v in vector]))

    def compose(self, other: 'SemilinearMap') -> 'SemilinearMap':
        """self ∘ other"""
        if other.dim != self.dim:
            raise InputError(f"cannot compose maps of dimensions {self.dim} and {other.dim}")
        right = other.matrix.conjugate() if self.conjugates else other.matrix
        return SemilinearMap(self.matrix @ right, self.conjugates != other.conjugates)

    def power(self, k: int) -> 'SemilinearMap':
        result = SemilinearMap(ExactMatrix.identity(self.dim, self.matrix.field), False)
        for _ in range(k):
            result = result.compose(self)
        return result

    def is_identity(self) -> bool:
        return not self.conjugates and self.matrix == ExactMatrix.identity(self.dim, self.matrix.field)

    def is_involution(self) -> bool:
        return self.compose(self).is_identity()


@dataclass(frozen=True)
class GradingAutomorphism:
    """
    θ^exponent：次数为 k 的向量乘以 ζ^(exponent·k)，ζ = exp(2πi/m)。

    Only m ∈ {1, 2, 4} have ζ in Q(i); for m = 3 the map is used through
    its exponents only.
    """
    degrees: Tuple[int, ...]
    modulus: int
    exponent: int = 1

    def power(self, s: int) -> 'GradingAutomorphism':
        return GradingAutomorphism(self.degrees, self.modulus, (self.exponent * s) % self.modulus)

    def inverse(self) -> 'GradingAutomorphism':
        return self.power(-1)

    def eigen_exponent(self, j: int) -> int:
        return (self.exponent * self.degrees[j]) % self.modulus

    def has_matrix(self) -> bool:
        return self.modulus in (1, 2, 4)

    def matrix(self) -> ExactMatrix:
        if not self.has_matrix():
            raise PreconditionError(f"θ for m={self.modulus} has no exact matrix over Q(i); "
                                    f"it is handled through degree bookkeeping")
        root = {1: QQ_I(1, 0), 2: QQ_I(-1, 0), 4: QQ_I(0, 1)}[self.modulus]
        dok = {}
        for j in range(len(self.degrees)):
            value = QQ_I(1, 0)
            for _ in range(self.eigen_exponent(j)):
                value *= root
            dok[(j, j)] = value
        return ExactMatrix.from_dok(dok, (len(self.degrees), len(self.degrees)), QQ_I)

    def as_semilinear(self) -> SemilinearMap:
        return SemilinearMap(self.matrix(), False)

    def is_identity(self) -> bool:
        return all(self.eigen_exponent(j) == 0 for j in range(len(self.degrees)))


def complexify(algebra: GradedAlgebra) -> Tuple[GradedAlgebra, SemilinearMap]:
    """复化：同一结构常数表，标量扩张到 Q(i)；τ_g 为逐坐标共轭"""
    if algebra.field != QQ:
        raise PreconditionError(f"{algebra.name} is already complex")
    return _complexify(algebra)


@lru_cache(maxsize=16)
def _complexify(algebra: GradedAlgebra) -> Tuple[GradedAlgebra, SemilinearMap]:
    brackets: BracketTable = {}
    for i in range(algebra.dim):
        for j, terms in algebra.table[i].items():
            if j > i:
                brackets[(i, j)] = {k: QQ_I.convert(c) for k, c in terms.items()}
    center = CenterData([g.convert_to(QQ_I) for g in algebra.center.generators],
                        list(algebra.center.orders))
    extras = dict(algebra.extras, real_form=algebra.name)
    complex_algebra = GradedAlgebra(f"{algebra.name}^C", QQ_I, algebra.modulus, algebra.labels,
                                    algebra.degrees, brackets, center=center, extras=extras)
    tau_g = SemilinearMap(ExactMatrix.identity(algebra.dim, QQ_I), True)
    return complex_algebra, tau_g


def theta_automorphism(algebra: GradedAlgebra) -> GradingAutomorphism:
    """θ^ℂ，并用次数可加性验证其为自同构"""
    if algebra.modulus not in (1, 2, 3, 4):
        raise PreconditionError(f"θ needs an m-th root of unity; m={algebra.modulus} is not supported")
    for i in range(algebra.dim):
        for j, terms in algebra.table[i].items():
            for k in terms:
                if (algebra.degrees[i] + algebra.degrees[j] - algebra.degrees[k]) % algebra.modulus:
                    raise ComputationError(
                        f"bracket [{algebra.labels[i]}, {algebra.labels[j]}] has a component on "
                        f"{algebra.labels[k]} of the wrong degree")
    return GradingAutomorphism(tuple(algebra.degrees), algebra.modulus)


# ==================== 自同构与紧形式 ====================

def automorphism_failure(algebra: GradedAlgebra, matrix: ExactMatrix) -> Optional[Tuple[int, int]]:
    """检验 φ[b_i, b_j] = [φ b_i, φ b_j]；返回第一个失败的基对"""
    if matrix.shape != (algebra.dim, algebra.dim):
        raise InputError(f"map of shape {matrix.shape} on algebra of dimension {algebra.dim}")
    columns = [{} for _ in range(algebra.dim)]
    for (r, c), v in matrix.to_dok().items():
        columns[c][r] = v
    table = algebra.table

    def image_bracket(left: Dict[int, Any], right: Dict[int, Any]) -> Dict[int, Any]:
        out: Dict[int, Any] = {}
        for a, x in left.items():
            row = table[a]
            for b, y in right.items():
                for k, c in row.get(b, {}).items():
                    out[k] = out.get(k, algebra.field.zero) + x * y * c
        return {k: v for k, v in out.items() if v}

    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            lhs: Dict[int, Any] = {}
            for k, c in table[i].get(j, {}).items():
                for r, v in columns[k].items():
                    lhs[r] = lhs.get(r, algebra.field.zero) + c * v
            lhs = {k: v for k, v in lhs.items() if v}
            if lhs != image_bracket(columns[i], columns[j]):
                return i, j
    return None


def _explicit_involution(algebra: GradedAlgebra) -> Optional[ExactMatrix]:
    entries = algebra.extras.get('cartan_involution')
    if entries is None:
        return None
    dok = {(int(i), int(j)): algebra.field.convert(parse_rational(c)) for i, j, c in entries}
    return ExactMatrix.from_dok(dok, (algebra.dim, algebra.dim), algebra.field)


def chevalley_involution(algebra: GradedAlgebra) -> ExactMatrix:
    """
    H ↦ −H，E_α ↦ λ_α E_{−α} 的 Cartan 型对合。

    Simple roots get λ_α = −sign B(E_α, E_{−α}); the rest follow from
    λ_{α+β} = λ_α λ_β N'/N and λ_{−α} = 1/λ_α.
    """
    cartan = algebra.extras.get('cartan')
    if cartan is None:
        raise PreconditionError(f"{algebra.name} has no root-vector identification")
    cartan = list(cartan)
    roots: Dict[Tuple, int] = {}
    for r in range(algebra.dim):
        if r in cartan:
            continue
        values = []
        for h in cartan:
            image = algebra.table[h].get(r, {})
            if set(image) - {r}:
                raise PreconditionError(f"basis vector {algebra.labels[r]} is not a root vector")
            values.append(real_part(image.get(r, algebra.field.zero), algebra.field))
        key = tuple(values)
        if key in roots or not any(key):
            raise PreconditionError(f"root spaces of {algebra.name} are not basis lines")
        roots[key] = r
    negate = lambda key: tuple(-v for v in key)
    add = lambda a, b: tuple(x + y for x, y in zip(a, b))
    positive = [key for key in roots if next(v for v in key if v) > 0]
    sums = {add(a, b) for a in positive for b in positive}
    simple = [key for key in positive if key not in sums]

    lam: Dict[Tuple, Any] = {}
    for key in simple:
        pairing = algebra.killing_form(algebra.basis_element(roots[key]), algebra.basis_element(roots[negate(key)]))
        lam[key] = QQ(-sign(real_part(pairing, algebra.field)))
    frontier = list(simple)
    while frontier:
        nxt = []
        for gamma in frontier:
            for alpha in simple:
                delta = add(gamma, alpha)
                if delta not in roots or delta in lam:
                    continue
                n_pos = algebra.table[roots[gamma]].get(roots[alpha], {}).get(roots[delta])
                n_neg = algebra.table[roots[negate(gamma)]].get(roots[negate(alpha)], {}).get(roots[negate(delta)])
                if not n_pos or not n_neg:
                    raise ComputationError(f"structure constant missing for root {delta}")
                lam[delta] = lam[gamma] * lam[alpha] * real_part(n_neg, algebra.field) / real_part(n_pos, algebra.field)
                nxt.append(delta)
        frontier = nxt
    if len(lam) != len(positive):
        raise ComputationError("positive roots not reached from the simple roots")

    dok = {(h, h): -algebra.field.one for h in cartan}
    for key, value in lam.items():
        dok[(roots[negate(key)], roots[key])] = algebra.field.convert(value)
        dok[(roots[key], roots[negate(key)])] = algebra.field.convert(1 / value)
    omega = ExactMatrix.from_dok(dok, (algebra.dim, algebra.dim), algebra.field)
    failure = automorphism_failure(algebra, omega)
    if failure is not None:
        i, j = failure
        raise ComputationError(f"Chevalley involution fails on [{algebra.labels[i]}, {algebra.labels[j]}]")
    return omega


def compact_form_conjugation(algebra: GradedAlgebra) -> SemilinearMap:
    """
    紧形式共轭 τ_u = ω ∘ conj。

    ``algebra`` is a complexification; ω is the explicit Cartan involution
    stored with the algebra when present, otherwise the Chevalley involution.
    """
    if algebra.field != QQ_I:
        raise PreconditionError("compact form conjugation acts on a complexified algebra")
    return SemilinearMap(cartan_involution(algebra), True)


def cartan_involution(algebra: GradedAlgebra) -> ExactMatrix:
    """显式给出的 Cartan 对合，否则为 Chevalley 对合"""
    omega = _explicit_involution(algebra)
    return omega if omega is not None else chevalley_involution(algebra)
