# -*- coding: utf-8 -*-
"""
外代数模块
ℝⁿ 上的多重向量/多重形式、楔积、Poincaré 对偶以及 gl(n) 的自然作用。

Indices are 1-based (e_1 .. e_n). A coordinate key is a strictly increasing
tuple; ``vol_* = e_1 ∧ … ∧ e_n`` and the basis forms satisfy
``<e^I, e_J> = δ_IJ`` on sorted tuples.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from core.exceptions import InputError
from core.scalars import format_scalar, parse_rational

logger = logging.getLogger(__name__)

VECTOR = 'vector'
FORM = 'form'


# ==================== 组合工具 ====================

@lru_cache(maxsize=None)
def index_tuples(n: int, k: int) -> Tuple[Tuple[int, ...], ...]:
    """{1..n} 的 k 元递增子集，按字典序"""
    return tuple(itertools.combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def tuple_positions(n: int, k: int) -> Dict[Tuple[int, ...], int]:
    return {t: pos for pos, t in enumerate(index_tuples(n, k))}


def sort_sign(seq: Sequence[int]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """排序所需置换的符号；有重复指标时返回 (0, None)"""
    if len(set(seq)) != len(seq):
        return 0, None
    inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


def complement(indices: Sequence[int], n: int) -> Tuple[int, ...]:
    present = set(indices)
    return tuple(i for i in range(1, n + 1) if i not in present)


@lru_cache(maxsize=None)
def volume_sign(indices: Tuple[int, ...], n: int) -> int:
    """e_I ∧ e_{I^c} = sign · vol_*"""
    return sort_sign(tuple(indices) + complement(indices, n))[0]


def derivation_action(matrix: Dict[Tuple[int, int], Any], indices: Tuple[int, ...]) -> Dict[Tuple[int, ...], Any]:
    """
    X · e_I，X ∈ gl(n) 作为导子作用。

    ``matrix`` maps 1-based (row, column) to entries, so X e_c = Σ_r X[r, c] e_r.
    """
    by_column: Dict[int, List[Tuple[int, Any]]] = {}
    for (r, c), value in matrix.items():
        if value:
            by_column.setdefault(c, []).append((r, value))
    out: Dict[Tuple[int, ...], Any] = {}
    for p, c in enumerate(indices):
        for r, value in by_column.get(c, ()):
            replaced = indices[:p] + (r,) + indices[p + 1:]
            sign, key = sort_sign(replaced)
            if sign:
                out[key] = out.get(key, 0) + sign * value
    return {k: v for k, v in out.items() if v}


# ==================== 多重向量 ====================

@dataclass
class MultiVector:
    """ℝⁿ 上的 k 次多重向量（kind='vector'）或 k 次形式（kind='form'）"""
    n: int
    k: int
    terms: Dict[Tuple[int, ...], Any] = field(default_factory=dict)
    kind: str = VECTOR

    def __post_init__(self):
        if self.n < 1 or self.k < 0:
            raise InputError(f"invalid multivector shape n={self.n}, k={self.k}")
        if self.kind not in (VECTOR, FORM):
            raise InputError(f"multivector kind must be 'vector' or 'form', got {self.kind!r}")
        clean = {}
        for key, value in self.terms.items():
            key = tuple(key)
            if len(key) != self.k:
                raise InputError(f"index tuple {key} does not have grade {self.k}")
            if any(i < 1 or i > self.n for i in key):
                raise InputError(f"index tuple {key} out of range 1..{self.n}")
            sign, ordered = sort_sign(key)
            if not sign:
                continue
            value = QQ.convert(value) * sign
            total = clean.get(ordered, QQ.zero) + value
            if total:
                clean[ordered] = total
            else:
                clean.pop(ordered, None)
        self.terms = clean

    @classmethod
    def basis(cls, n: int, indices: Sequence[int], kind: str = VECTOR) -> 'MultiVector':
        return cls(n, len(indices), {tuple(indices): QQ.one}, kind)

    @classmethod
    def zero(cls, n: int, k: int, kind: str = VECTOR) -> 'MultiVector':
        return cls(n, k, {}, kind)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: 'MultiVector'):
        if other.n != self.n or other.kind != self.kind:
            raise InputError("multivectors live in different exterior algebras")

    def __add__(self, other: 'MultiVector') -> 'MultiVector':
        self._check(other)
        if other.k != self.k:
            raise InputError(f"cannot add grades {self.k} and {other.k}")
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms.get(key, QQ.zero) + value
        return MultiVector(self.n, self.k, terms, self.kind)

    def __sub__(self, other: 'MultiVector') -> 'MultiVector':
        return self + other.scale(-1)

    def scale(self, c) -> 'MultiVector':
        c = QQ.convert(c)
        return MultiVector(self.n, self.k, {key: c * v for key, v in self.terms.items()}, self.kind)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiVector):
            return NotImplemented
        return (self.n, self.k, self.kind, self.terms) == (other.n, other.k, other.kind, other.terms)

    def coordinates(self) -> List:
        """按 index_tuples(n, k) 顺序的坐标"""
        return [self.terms.get(key, QQ.zero) for key in index_tuples(self.n, self.k)]

    @classmethod
    def from_coordinates(cls, n: int, k: int, coords: Sequence, kind: str = VECTOR) -> 'MultiVector':
        keys = index_tuples(n, k)
        if len(coords) != len(keys):
            raise InputError(f"{len(coords)} coordinates for grade {k} in dimension {n}")
        return cls(n, k, {key: c for key, c in zip(keys, coords) if c}, kind)

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'n': self.n,
            'k': self.k,
            'terms': [[list(key), format_scalar(value)] for key, value in sorted(self.terms.items())],
        }
        if self.kind != VECTOR:
            doc['kind'] = self.kind
        return doc

    @classmethod
    def from_dict(cls, doc: Dict[str, Any], kind: Optional[str] = None) -> 'MultiVector':
        terms: Dict[Tuple[int, ...], Any] = {}
        for indices, value in doc.get('terms', []):
            sign, key = sort_sign(tuple(indices))
            if len(indices) != doc['k']:
                raise InputError(f"index tuple {indices} does not have grade {doc['k']}")
            if not sign:
                raise InputError(f"repeated index in {indices}")
            terms[key] = terms.get(key, QQ.zero) + sign * parse_rational(value)
        return cls(int(doc['n']), int(doc['k']), terms, kind or doc.get('kind', VECTOR))

    def describe(self) -> str:
        prefix = 'e' if self.kind == VECTOR else 'e^'
        parts = [f"{format_scalar(v)}*{prefix}{''.join(str(i) for i in key)}"
                 for key, v in sorted(self.terms.items())]
        return " + ".join(parts) if parts else "0"


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    """楔积；次数超过 n 时得到零"""
    a._check(b)
    grade = a.k + b.k
    if grade > a.n:
        return MultiVector(a.n, grade, {}, a.kind)
    terms: Dict[Tuple[int, ...], Any] = {}
    for key_a, va in a.terms.items():
        for key_b, vb in b.terms.items():
            sign, key = sort_sign(key_a + key_b)
            if sign:
                terms[key] = terms.get(key, QQ.zero) + sign * va * vb
    return MultiVector(a.n, grade, terms, a.kind)


@dataclass(frozen=True)
class VolumePair:
    """vol_* = e_1∧…∧e_n 与 vol^* = e^1∧…∧e^n，⟨vol^*, vol_*⟩ = 1"""
    n: int

    @property
    def vol_star(self) -> MultiVector:
        return MultiVector.basis(self.n, range(1, self.n + 1), VECTOR)

    @property
    def vol_costar(self) -> MultiVector:
        return MultiVector.basis(self.n, range(1, self.n + 1), FORM)

    def pairing(self) -> int:
        return 1


def pairing(form: MultiVector, vector: MultiVector):
    """⟨φ, v⟩，基上 ⟨e^I, e_J⟩ = δ_IJ"""
    if form.kind != FORM or vector.kind != VECTOR:
        raise InputError("pairing needs a form and a vector")
    if form.n != vector.n or form.k != vector.k:
        return QQ.zero
    return sum((v * vector.terms.get(key, QQ.zero) for key, v in form.terms.items()), QQ.zero)


def poincare_dual(x: MultiVector) -> MultiVector:
    """
    Poincaré 对偶。

    Forms go to vectors by ⟨P_*(x), y⟩ = ⟨x ∧ y, vol_*⟩, i.e.
    P_*(e^I) = sign(I, I^c) e_{I^c}; vectors go to forms by the co-volume,
    P^*(e_I) = sign(I, I^c) e^{I^c}. Applying both gives (-1)^{k(n-k)}.
    """
    target = VECTOR if x.kind == FORM else FORM
    terms = {}
    for key, value in x.terms.items():
        terms[complement(key, x.n)] = volume_sign(key, x.n) * value
    return MultiVector(x.n, x.n - x.k, terms, target)


def lie_action(matrix: Dict[Tuple[int, int], Any], x: MultiVector) -> MultiVector:
    """X ∈ gl(n) 的李代数作用（形式上作用为 -Xᵀ）"""
    if x.kind == FORM:
        matrix = {(c, r): -v for (r, c), v in matrix.items()}
    terms: Dict[Tuple[int, ...], Any] = {}
    for key, value in x.terms.items():
        for image, c in derivation_action(matrix, key).items():
            terms[image] = terms.get(image, QQ.zero) + c * value
    return MultiVector(x.n, x.k, terms, x.kind)


def _minor(matrix: Sequence[Sequence], rows: Sequence[int], cols: Sequence[int]):
    block = [[QQ.convert(matrix[r - 1][c - 1]) for c in cols] for r in rows]
    return DomainMatrix(block, (len(rows), len(cols)), QQ).det()


def group_action(matrix: Sequence[Sequence], x: MultiVector) -> MultiVector:
    """
    g ∈ GL(n) 的作用：向量上 g·e_I = ∧ g e_i，形式上用 (g⁻¹)ᵀ。

    Coefficients are k×k minors of g.
    """
    n = x.n
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise InputError(f"group element must be {n}x{n}")
    g = [[QQ.convert(v) for v in row] for row in matrix]
    if x.kind == FORM:
        inverse = DomainMatrix(g, (n, n), QQ).inv().to_Matrix().T
        g = [[QQ.from_sympy(inverse[i, j]) for j in range(n)] for i in range(n)]
    terms: Dict[Tuple[int, ...], Any] = {}
    targets = index_tuples(n, x.k)
    for key, value in x.terms.items():
        for rows in targets:
            c = _minor(g, rows, key)
            if c:
                terms[rows] = terms.get(rows, QQ.zero) + c * value
    return MultiVector(n, x.k, terms, x.kind)


def random_multivector(rng, n: int, k: int, terms: int = 3, kind: str = VECTOR) -> MultiVector:
    """测试用随机多重向量（小整数系数）"""
    keys = index_tuples(n, k)
    chosen = rng.choice(len(keys), size=min(terms, len(keys)), replace=False)
    return MultiVector(n, k, {keys[int(p)]: int(rng.integers(-3, 4)) or 1 for p in chosen}, kind)
