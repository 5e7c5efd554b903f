# -*- coding: utf-8 -*-
"""
精确线性代数模块
稀疏 DomainMatrix 上的秩/核/求解、极小多项式、矩阵 Jordan–Chevalley 分解
以及幂零矩阵的指数。

All arithmetic is exact over QQ or QQ_I; vectors are dense tuples of domain
elements.
"""

import bisect
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Poly, QQ, QQ_I, symbols
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from core.exceptions import ComputationError, InputError, PreconditionError

logger = logging.getLogger(__name__)

T = symbols('t')

Vector = Tuple


class ExactMatrix:
    """稀疏精确矩阵（对 DomainMatrix 的薄封装）"""

    __slots__ = ('rep', '_rows')

    def __init__(self, rep: DomainMatrix):
        self.rep = rep.to_sparse()
        self._rows = None

    # ---------- 构造 ----------

    @classmethod
    def from_dok(cls, dok: Dict[Tuple[int, int], object], shape: Tuple[int, int],
                 field: Domain) -> 'ExactMatrix':
        filtered = {}
        for (i, j), value in dok.items():
            value = field.convert(value)
            if value:
                filtered[(i, j)] = value
        return cls(DomainMatrix.from_dok(filtered, shape, field))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Domain, ncols: int = None) -> 'ExactMatrix':
        ncols = len(rows[0]) if rows else (ncols or 0)
        dok = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls.from_dok(dok, (len(rows), ncols), field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: Domain, nrows: int = None) -> 'ExactMatrix':
        nrows = len(columns[0]) if columns else (nrows or 0)
        dok = {(i, j): v for j, col in enumerate(columns) for i, v in enumerate(col) if v}
        return cls.from_dok(dok, (nrows, len(columns)), field)

    @classmethod
    def identity(cls, n: int, field: Domain) -> 'ExactMatrix':
        return cls.from_dok({(i, i): field.one for i in range(n)}, (n, n), field)

    @classmethod
    def zeros(cls, shape: Tuple[int, int], field: Domain) -> 'ExactMatrix':
        return cls.from_dok({}, shape, field)

    # ---------- 访问 ----------

    @property
    def field(self) -> Domain:
        return self.rep.domain

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rep.shape

    @property
    def rows(self) -> Dict[int, Dict[int, object]]:
        """按行的稀疏字典 {i: {j: value}}"""
        if self._rows is None:
            self._rows = self.rep.to_dod()
        return self._rows

    def to_dok(self) -> Dict[Tuple[int, int], object]:
        return self.rep.to_dok()

    def entry(self, i: int, j: int):
        return self.rows.get(i, {}).get(j, self.field.zero)

    def row(self, i: int) -> Vector:
        values = [self.field.zero] * self.shape[1]
        for j, v in self.rows.get(i, {}).items():
            values[j] = v
        return tuple(values)

    def column(self, j: int) -> Vector:
        values = [self.field.zero] * self.shape[0]
        for i, row in self.rows.items():
            if j in row:
                values[i] = row[j]
        return tuple(values)

    def to_rows(self) -> List[Vector]:
        return [self.row(i) for i in range(self.shape[0])]

    def is_zero(self) -> bool:
        return self.rep.nnz() == 0

    # ---------- 运算 ----------

    def __add__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        return ExactMatrix(self.rep.add(other.rep))

    def __sub__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        return ExactMatrix(self.rep.sub(other.rep))

    def __neg__(self) -> 'ExactMatrix':
        return ExactMatrix(self.rep.neg())

    def __matmul__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        if self.shape[1] != other.shape[0]:
            raise InputError(f"shape mismatch in product: {self.shape} @ {other.shape}")
        return ExactMatrix(self.rep.matmul(other.rep))

    def scale(self, c) -> 'ExactMatrix':
        c = self.field.convert(c)
        if not c:
            return ExactMatrix.zeros(self.shape, self.field)
        return ExactMatrix(self.rep.scalarmul(c))

    def apply(self, vector: Sequence) -> Vector:
        """矩阵乘向量"""
        if len(vector) != self.shape[1]:
            raise InputError(f"vector of length {len(vector)} does not fit shape {self.shape}")
        zero = self.field.zero
        out = [zero] * self.shape[0]
        for i, row in self.rows.items():
            acc = zero
            for j, v in row.items():
                x = vector[j]
                if x:
                    acc += v * x
            out[i] = acc
        return tuple(out)

    def transpose(self) -> 'ExactMatrix':
        return ExactMatrix(self.rep.transpose())

    def trace(self):
        acc = self.field.zero
        for i, row in self.rows.items():
            if i in row:
                acc += row[i]
        return acc

    def power(self, k: int) -> 'ExactMatrix':
        result = ExactMatrix.identity(self.shape[0], self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def convert_to(self, field: Domain) -> 'ExactMatrix':
        return ExactMatrix(self.rep.convert_to(field))

    def conjugate(self) -> 'ExactMatrix':
        if self.field != QQ_I:
            return self
        dok = {k: QQ_I(v.x, -v.y) for k, v in self.to_dok().items()}
        return ExactMatrix.from_dok(dok, self.shape, QQ_I)

    def is_rational(self) -> bool:
        if self.field != QQ_I:
            return True
        return all(not v.y for v in self.to_dok().values())

    def to_rational(self) -> 'ExactMatrix':
        if self.field == QQ:
            return self
        if not self.is_rational():
            raise PreconditionError("matrix has non-real entries")
        dok = {k: v.x for k, v in self.to_dok().items()}
        return ExactMatrix.from_dok(dok, self.shape, QQ)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.to_dok() == other.to_dok()

    def __hash__(self):
        return hash((self.shape, frozenset(self.to_dok().items())))

    def __repr__(self) -> str:
        return f"ExactMatrix(shape={self.shape}, nnz={self.rep.nnz()}, field={self.field})"


# ==================== 秩 / 核 / 求解 ====================

@dataclass
class SolveResult:
    """rank_kernel_solve 的结果"""
    rank: int
    kernel: List[Vector] = dataclass_field(default_factory=list)
    solution: Optional[Vector] = None
    consistent: bool = True


def rank_kernel_solve(matrix: ExactMatrix, rhs: Optional[Sequence] = None) -> SolveResult:
    """
    秩、核基（按自由列排序的梯形形式）以及 M x = rhs 的特解。

    The particular solution sets every free variable to zero, which is the
    least-lexicographic choice relative to the reduced echelon form.
    """
    nrows, ncols = matrix.shape
    field = matrix.field
    augmented = matrix.rep
    if rhs is not None:
        if len(rhs) != nrows:
            raise InputError(f"right-hand side of length {len(rhs)} does not fit shape {matrix.shape}")
        column = ExactMatrix.from_columns([rhs], field, nrows=nrows).rep
        augmented = augmented.hstack(column)

    reduced, pivots = augmented.rref()
    reduced_rows = reduced.to_dod()
    pivots = list(pivots)
    consistent = True
    if rhs is not None and pivots and pivots[-1] == ncols:
        consistent = False
        pivots = pivots[:-1]
    rank = len(pivots)

    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    kernel = []
    for f in free:
        vec = [field.zero] * ncols
        vec[f] = field.one
        for r, pc in enumerate(pivots):
            value = reduced_rows.get(r, {}).get(f)
            if value:
                vec[pc] = -value
        kernel.append(tuple(vec))

    solution = None
    if rhs is not None and consistent:
        vec = [field.zero] * ncols
        for r, pc in enumerate(pivots):
            value = reduced_rows.get(r, {}).get(ncols)
            if value:
                vec[pc] = value
        solution = tuple(vec)

    return SolveResult(rank=rank, kernel=kernel, solution=solution, consistent=consistent)


def kernel_basis(matrix: ExactMatrix) -> List[Vector]:
    return rank_kernel_solve(matrix).kernel


def matrix_rank(matrix: ExactMatrix) -> int:
    return rank_kernel_solve(matrix).rank


def solve(matrix: ExactMatrix, rhs: Sequence) -> Optional[Vector]:
    """M x = rhs 的特解；无解时返回 None"""
    return rank_kernel_solve(matrix, rhs).solution


def row_reduce(vectors: Iterable[Sequence], length: int, field: Domain) -> List[Vector]:
    """张成空间的规范基（简化行阶梯形的非零行）"""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    reduced, pivots = ExactMatrix.from_rows(vectors, field, ncols=length).rep.rref()
    dod = reduced.to_dod()
    out = []
    for r in range(len(pivots)):
        vec = [field.zero] * length
        for j, v in dod.get(r, {}).items():
            vec[j] = v
        out.append(tuple(vec))
    return out


def intersect_spans(first: Sequence[Sequence], second: Sequence[Sequence],
                    length: int, field: Domain) -> List[Vector]:
    """两个子空间的交"""
    if not first or not second:
        return []
    columns = [tuple(u) for u in first] + [tuple(-x for x in w) for w in second]
    kernel = kernel_basis(ExactMatrix.from_columns(columns, field, nrows=length))
    vectors = []
    for coeffs in kernel:
        acc = [field.zero] * length
        for c, u in zip(coeffs[:len(first)], first):
            if c:
                for k, x in enumerate(u):
                    if x:
                        acc[k] += c * x
        vectors.append(tuple(acc))
    return row_reduce(vectors, length, field)


# ==================== 增量消元 ====================

class EchelonReducer:
    """增量式行消元器，可选地跟踪线性组合系数"""

    def __init__(self, field: Domain, track: bool = False):
        self.field = field
        self.track = track
        self.pivots: List[int] = []
        self.rows: Dict[int, Dict[int, object]] = {}
        self.combos: Dict[int, Dict[int, object]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec: Dict[int, object], combo: Optional[Dict[int, object]]):
        for p in self.pivots:
            c = vec.get(p)
            if not c:
                continue
            for j, v in self.rows[p].items():
                value = vec.get(j, self.field.zero) - c * v
                if value:
                    vec[j] = value
                else:
                    vec.pop(j, None)
            if combo is not None:
                for j, v in self.combos[p].items():
                    value = combo.get(j, self.field.zero) - c * v
                    if value:
                        combo[j] = value
                    else:
                        combo.pop(j, None)
        return vec, combo

    def contains(self, vector: Sequence) -> bool:
        vec = {j: v for j, v in enumerate(vector) if v}
        vec, _ = self._reduce(vec, None)
        return not vec

    def insert(self, vector: Sequence, label: int = None) -> Optional[Dict[int, object]]:
        """
        插入向量；若已在张成空间中则返回其依赖关系（跟踪模式下），否则返回 None。

        In tracking mode the returned dict {label: coefficient} is a relation
        sum(c * inserted[label]) == 0 with coefficient 1 on ``label``.
        """
        vec = {j: v for j, v in enumerate(vector) if v}
        combo = {label: self.field.one} if self.track else None
        vec, combo = self._reduce(vec, combo)
        if not vec:
            return combo if self.track else {}
        pivot = min(vec)
        inv = self.field.one / vec[pivot]
        self.rows[pivot] = {j: v * inv for j, v in vec.items()}
        if self.track:
            self.combos[pivot] = {j: v * inv for j, v in combo.items()}
        bisect.insort(self.pivots, pivot)
        return None


# ==================== 极小多项式 ====================

def _poly_from_relation(relation: Dict[int, object], field: Domain) -> Poly:
    degree = max(relation)
    coeffs = [field.zero] * (degree + 1)
    for k, c in relation.items():
        coeffs[degree - k] = c
    return Poly(coeffs, T, domain=field)


def minimal_polynomial(matrix: ExactMatrix) -> Poly:
    """
    通过 Krylov 序列计算极小多项式（首一）。

    Local minimal polynomials of cyclic subspaces are combined with lcm until
    the explored cyclic subspaces span the whole space.
    """
    n, m = matrix.shape
    if n != m:
        raise InputError(f"minimal polynomial needs a square matrix, got {matrix.shape}")
    field = matrix.field
    result = Poly(1, T, domain=field)
    if n == 0:
        return result

    explored = EchelonReducer(field)
    starts = [tuple([field.one] * n)]
    starts.extend(tuple(field.one if k == j else field.zero for k in range(n)) for j in range(n))

    for start in starts:
        if explored.rank == n:
            break
        if explored.contains(start):
            continue
        local = EchelonReducer(field, track=True)
        vec = start
        k = 0
        while True:
            relation = local.insert(vec, label=k)
            if relation is not None:
                break
            explored.insert(vec)
            vec = matrix.apply(vec)
            k += 1
        result = result.lcm(_poly_from_relation(relation, field))

    return result.monic()


def local_minimal_polynomial(matrix: ExactMatrix, vector: Sequence) -> Poly:
    """向量 v 的零化多项式：使 p(M)v = 0 的首一最低次多项式"""
    local = EchelonReducer(matrix.field, track=True)
    vec = tuple(vector)
    k = 0
    while True:
        relation = local.insert(vec, label=k)
        if relation is not None:
            return _poly_from_relation(relation, matrix.field).monic()
        vec = matrix.apply(vec)
        k += 1


def evaluate_polynomial_columns(poly: Poly, matrix: ExactMatrix) -> ExactMatrix:
    """按列用 Horner 规则计算 p(M)"""
    n = matrix.shape[0]
    field = matrix.field
    coeffs = [field.convert(c) for c in poly.all_coeffs()]
    columns = []
    for j in range(n):
        unit = tuple(field.one if k == j else field.zero for k in range(n))
        acc = tuple(coeffs[0] * x for x in unit)
        for c in coeffs[1:]:
            acc = matrix.apply(acc)
            if c:
                acc = tuple(a + c * u for a, u in zip(acc, unit))
        columns.append(acc)
    return ExactMatrix.from_columns(columns, field, nrows=n)


@dataclass
class MatrixJordanChevalley:
    """M = S + N，S 半单、N 幂零、两者可交换且都是 M 的多项式"""
    semisimple: ExactMatrix
    nilpotent: ExactMatrix
    polynomial: Poly
    minimal_polynomial: Poly


def semisimple_polynomial(mu: Poly) -> Poly:
    """
    Newton 迭代：求 s(t) 使 S = s(M) 为 M 的半单部分。

    Works in K[t]/(mu) with p = squarefree part of mu: s <- s - p(s)/p'(s)
    until p(s) == 0 mod mu.
    """
    field = mu.get_domain()
    p = mu.sqf_part().monic()
    if p.degree() == mu.degree():
        return Poly(T, T, domain=field)
    if p.degree() == 1 and p.TC() == 0:
        return Poly(0, T, domain=field)
    dp = p.diff(T)
    s = Poly(T, T, domain=field)
    for _ in range(mu.degree() + 2):
        residual = p.compose(s).rem(mu)
        if residual.is_zero:
            return s
        correction = residual.mul(dp.compose(s).rem(mu).invert(mu)).rem(mu)
        s = s.sub(correction).rem(mu)
    raise ComputationError("Newton iteration for the semisimple part did not converge")


def matrix_jordan_chevalley(matrix: ExactMatrix) -> MatrixJordanChevalley:
    """矩阵的 Jordan–Chevalley 分解"""
    mu = minimal_polynomial(matrix)
    s = semisimple_polynomial(mu)
    if s == Poly(T, T, domain=mu.get_domain()):
        semisimple = matrix
    elif s.is_zero:
        semisimple = ExactMatrix.zeros(matrix.shape, matrix.field)
    else:
        semisimple = evaluate_polynomial_columns(s, matrix)
    return MatrixJordanChevalley(
        semisimple=semisimple,
        nilpotent=matrix - semisimple,
        polynomial=s,
        minimal_polynomial=mu,
    )


# ==================== 幂零 / 指数 ====================

def nilpotency_index(matrix: ExactMatrix) -> Optional[int]:
    """
    幂零指数；非幂零时返回 None。

    Follows the chain of images M(V) ⊇ M²(V) ⊇ ...; a stable nonzero image
    means the matrix is not nilpotent.
    """
    n = matrix.shape[0]
    field = matrix.field
    if matrix.is_zero():
        return 1 if n else 0
    basis = row_reduce([matrix.column(j) for j in range(n)], n, field)
    index = 1
    while basis:
        image = row_reduce([matrix.apply(v) for v in basis], n, field)
        index += 1
        if len(image) == len(basis):
            return None
        basis = image
    return index


def is_nilpotent_matrix(matrix: ExactMatrix) -> bool:
    return nilpotency_index(matrix) is not None


def nilpotent_exp(matrix: ExactMatrix) -> ExactMatrix:
    """幂零矩阵的指数 exp(M) = Σ M^k / k!"""
    n = matrix.shape[0]
    index = nilpotency_index(matrix)
    if index is None:
        raise PreconditionError("exp requires nilpotent argument")
    field = matrix.field
    result = ExactMatrix.identity(n, field)
    term = ExactMatrix.identity(n, field)
    for k in range(1, index):
        term = (term @ matrix).scale(field.one / field.convert(k))
        result = result + term
    return result


# ==================== 对称矩阵 ====================

def symmetric_pivots(gram: Sequence[Sequence], field: Domain = QQ) -> Optional[List]:
    """
    无换行的对称消元主元（LDLᵀ 的 D）；遇到零主元返回 None。

    All pivots positive means positive definite.
    """
    n = len(gram)
    work = [[field.convert(x) for x in row] for row in gram]
    pivots = []
    for k in range(n):
        pivot = work[k][k]
        if not pivot:
            return None
        pivots.append(pivot)
        row_k = work[k]
        for i in range(k + 1, n):
            factor = work[i][k]
            if not factor:
                continue
            factor = factor / pivot
            row_i = work[i]
            for j in range(k + 1, n):
                if row_k[j]:
                    row_i[j] -= factor * row_k[j]
    return pivots


def definiteness(gram: Sequence[Sequence], field: Domain = QQ) -> str:
    """'positive' / 'negative' / 'indefinite-or-degenerate'"""
    if not gram:
        return 'positive'
    pivots = symmetric_pivots(gram, field)
    if pivots is None:
        return 'indefinite-or-degenerate'
    if all(p > 0 for p in pivots):
        return 'positive'
    if all(p < 0 for p in pivots):
        return 'negative'
    return 'indefinite-or-degenerate'
