# -*- coding: utf-8 -*-
"""
分次李代数核心模块
结构常数表示的 Z_m 分次李代数、元素、括号、伴随矩阵、Killing 型以及子空间运算
（中心化子、正规化子、换位子代数、中心）。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ, QQ_I
from sympy.polys.domains.domain import Domain

from core.exceptions import AxiomViolation, InputError, PreconditionError
from core.linalg import (ExactMatrix, intersect_spans, kernel_basis, matrix_rank,
                         row_reduce, solve)
from core.scalars import field_from_tag, field_tag, format_scalar, parse_scalar

logger = logging.getLogger(__name__)

BracketTable = Dict[Tuple[int, int], Dict[int, Any]]


@dataclass
class CenterData:
    """Z(G_0) 的生成元（作为李代数自同构矩阵）及其阶"""
    generators: List[ExactMatrix] = field(default_factory=list)
    orders: List[int] = field(default_factory=list)

    def is_trivial(self) -> bool:
        return not self.generators


class Element:
    """李代数元素（基下坐标）"""

    __slots__ = ('algebra', 'coords')

    def __init__(self, algebra: 'GradedAlgebra', coords: Sequence):
        if len(coords) != algebra.dim:
            raise InputError(f"element has {len(coords)} coordinates, algebra {algebra.name} "
                             f"has dimension {algebra.dim}")
        self.algebra = algebra
        self.coords = tuple(algebra.field.convert(c) for c in coords)

    def _check(self, other: 'Element'):
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            raise InputError("elements belong to different algebras")

    def __add__(self, other: 'Element') -> 'Element':
        self._check(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: 'Element') -> 'Element':
        self._check(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> 'Element':
        return Element(self.algebra, [-a for a in self.coords])

    def scale(self, c) -> 'Element':
        c = self.algebra.field.convert(c)
        return Element(self.algebra, [c * a for a in self.coords])

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return other.algebra is self.algebra and other.coords == self.coords

    def __hash__(self):
        return hash((self.algebra.name, self.coords))

    def bracket(self, other: 'Element') -> 'Element':
        return self.algebra.bracket(self, other)

    @property
    def support(self) -> List[int]:
        return [i for i, c in enumerate(self.coords) if c]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def degree(self) -> Optional[int]:
        """齐次元素的次数；零元素或非齐次元素返回 None"""
        residues = {self.algebra.degrees[i] for i in self.support}
        return residues.pop() if len(residues) == 1 else None

    def is_homogeneous(self, k: int) -> bool:
        k %= self.algebra.modulus
        return all(self.algebra.degrees[i] == k for i in self.support)

    def to_strings(self) -> List[str]:
        return [format_scalar(c, self.algebra.field) for c in self.coords]

    def describe(self) -> str:
        terms = []
        for i in self.support:
            c = format_scalar(self.coords[i], self.algebra.field)
            label = self.algebra.labels[i]
            terms.append(label if c == "1" else f"-{label}" if c == "-1" else f"({c}) {label}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"Element({self.algebra.name}: {self.describe()})"


class Subspace:
    """子空间：规范的简化行阶梯基（相等即矩阵相等）"""

    def __init__(self, algebra: 'GradedAlgebra', vectors: Iterable[Sequence] = ()):
        self.algebra = algebra
        self.basis: Tuple[Tuple, ...] = tuple(row_reduce(list(vectors), algebra.dim, algebra.field))
        self.pivots = tuple(next(j for j, v in enumerate(row) if v) for row in self.basis)

    @classmethod
    def span(cls, algebra: 'GradedAlgebra', elements: Iterable[Element]) -> 'Subspace':
        return cls(algebra, [x.coords for x in elements])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def elements(self) -> List[Element]:
        return [Element(self.algebra, row) for row in self.basis]

    def coordinates_of(self, x) -> Optional[Tuple]:
        """x 在基下的坐标；不在子空间中时返回 None"""
        coords = x.coords if isinstance(x, Element) else tuple(x)
        values = tuple(coords[p] for p in self.pivots)
        zero = self.algebra.field.zero
        rebuilt = [zero] * self.algebra.dim
        for c, row in zip(values, self.basis):
            if c:
                for j, v in enumerate(row):
                    if v:
                        rebuilt[j] += c * v
        return values if tuple(rebuilt) == tuple(coords) else None

    def contains(self, x) -> bool:
        return self.coordinates_of(x) is not None

    def combination(self, coefficients: Sequence) -> Element:
        zero = self.algebra.field.zero
        acc = [zero] * self.algebra.dim
        for c, row in zip(coefficients, self.basis):
            c = self.algebra.field.convert(c)
            if c:
                for j, v in enumerate(row):
                    if v:
                        acc[j] += c * v
        return Element(self.algebra, acc)

    def intersect(self, other: 'Subspace') -> 'Subspace':
        return Subspace(self.algebra, intersect_spans(self.basis, other.basis,
                                                      self.algebra.dim, self.algebra.field))

    def __add__(self, other: 'Subspace') -> 'Subspace':
        return Subspace(self.algebra, self.basis + other.basis)

    def is_subspace_of(self, other: 'Subspace') -> bool:
        return all(other.contains(row) for row in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return other.algebra is self.algebra and other.basis == self.basis

    def __hash__(self):
        return hash((self.algebra.name, self.basis))

    def to_strings(self) -> List[List[str]]:
        return [[format_scalar(v, self.algebra.field) for v in row] for row in self.basis]

    def describe(self) -> List[str]:
        return [x.describe() for x in self.elements()]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, basis={self.describe()})"


class GradedAlgebra:
    """Z_m 分次李代数（结构常数表）"""

    def __init__(self, name: str, field: Domain, modulus: int, labels: Sequence[str],
                 degrees: Sequence[int], brackets: BracketTable,
                 center: Optional[CenterData] = None, extras: Optional[Dict[str, Any]] = None):
        if modulus < 1:
            raise InputError(f"modulus must be positive, got {modulus}")
        if len(labels) != len(degrees):
            raise InputError(f"{len(labels)} basis labels but {len(degrees)} degrees")
        if len(set(labels)) != len(labels):
            raise InputError("basis labels must be distinct")

        self.name = name
        self.field = field
        self.modulus = modulus
        self.labels = list(labels)
        self.degrees = [d % modulus for d in degrees]
        self.center = center or CenterData()
        self.extras = dict(extras or {})
        self._label_index = {label: i for i, label in enumerate(self.labels)}
        self._ad_cache: Dict[int, ExactMatrix] = {}

        n = len(self.labels)
        self.table: List[Dict[int, Dict[int, Any]]] = [dict() for _ in range(n)]
        self.antisymmetry_issues: List[Tuple[int, int]] = []
        for (i, j), terms in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"bracket index ({i}, {j}) out of range for dimension {n}")
            clean = {}
            for k, c in terms.items():
                if not 0 <= k < n:
                    raise InputError(f"bracket target {k} out of range for dimension {n}")
                c = field.convert(c)
                if c:
                    clean[k] = c
            if i == j:
                if clean:
                    self.antisymmetry_issues.append((i, i))
                continue
            if i > j:
                i, j = j, i
                clean = {k: -c for k, c in clean.items()}
            if j in self.table[i]:
                if self.table[i][j] != clean:
                    self.antisymmetry_issues.append((i, j))
                continue
            if clean:
                self.table[i][j] = clean
                self.table[j][i] = {k: -c for k, c in clean.items()}

    # ---------- 基本信息 ----------

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise InputError(f"algebra {self.name} has no basis vector {label!r}")

    def element(self, coords: Sequence) -> Element:
        return Element(self, coords)

    def zero(self) -> Element:
        return Element(self, [self.field.zero] * self.dim)

    def basis_element(self, i: int) -> Element:
        coords = [self.field.zero] * self.dim
        coords[i] = self.field.one
        return Element(self, coords)

    def from_terms(self, terms: Dict[str, Any]) -> Element:
        """由 {标签: 系数} 构造元素"""
        coords = [self.field.zero] * self.dim
        for label, c in terms.items():
            value = parse_scalar(c, self.field) if isinstance(c, str) else self.field.convert(c)
            coords[self.index_of(label)] += value
        return Element(self, coords)

    def degree_indices(self, k: int) -> List[int]:
        k %= self.modulus
        return [i for i, d in enumerate(self.degrees) if d == k]

    def degree_dims(self) -> Dict[int, int]:
        return {k: len(self.degree_indices(k)) for k in range(self.modulus)}

    # ---------- 括号与伴随 ----------

    def bracket_coords(self, u: Sequence, v: Sequence) -> Tuple:
        zero = self.field.zero
        out = [zero] * self.dim
        support_v = [j for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.table[i]
            for j in support_v:
                terms = row.get(j)
                if terms:
                    ab = a * v[j]
                    for k, c in terms.items():
                        out[k] += ab * c
        return tuple(out)

    def bracket(self, x: Element, y: Element) -> Element:
        if x.algebra is not self or y.algebra is not self:
            raise InputError("elements belong to different algebras")
        return Element(self, self.bracket_coords(x.coords, y.coords))

    def basis_ad(self, i: int) -> ExactMatrix:
        """基向量的伴随矩阵（缓存）"""
        cached = self._ad_cache.get(i)
        if cached is None:
            dok = {}
            for j, terms in self.table[i].items():
                for k, c in terms.items():
                    dok[(k, j)] = c
            cached = ExactMatrix.from_dok(dok, (self.dim, self.dim), self.field)
            self._ad_cache[i] = cached
        return cached

    def ad_matrix(self, x: Element) -> ExactMatrix:
        """y ↦ [x, y] 的矩阵"""
        dok: Dict[Tuple[int, int], Any] = {}
        zero = self.field.zero
        for i in x.support:
            a = x.coords[i]
            for j, terms in self.table[i].items():
                for k, c in terms.items():
                    dok[(k, j)] = dok.get((k, j), zero) + a * c
        return ExactMatrix.from_dok(dok, (self.dim, self.dim), self.field)

    def killing_form(self, x: Element, y: Element):
        """B(x, y) = tr(ad x · ad y)"""
        if x.algebra is not self or y.algebra is not self:
            raise InputError("elements belong to different algebras")
        return _trace_of_product(self.ad_matrix(x), self.ad_matrix(y), self.field)

    def killing_gram(self, rows: Sequence[int], cols: Sequence[int]) -> List[List]:
        """基向量间 Killing 型的 Gram 矩阵块"""
        return [[_trace_of_product(self.basis_ad(i), self.basis_ad(j), self.field) for j in cols]
                for i in rows]

    def killing_gram_of(self, elements: Sequence[Element]) -> List[List]:
        ads = [self.ad_matrix(x) for x in elements]
        return [[_trace_of_product(a, b, self.field) for b in ads] for a in ads]

    # ---------- 分次 ----------

    def graded_component(self, x: Element, k: int) -> Element:
        k %= self.modulus
        return Element(self, [c if self.degrees[i] == k else self.field.zero
                              for i, c in enumerate(x.coords)])

    def component_subspace(self, k: int) -> Subspace:
        return Subspace(self, [self.basis_element(i).coords for i in self.degree_indices(k)])

    def full_space(self) -> Subspace:
        return Subspace(self, [self.basis_element(i).coords for i in range(self.dim)])

    # ---------- 子空间运算 ----------

    def centralizer(self, x, within: Optional[Subspace] = None) -> Subspace:
        """{y ∈ within : [s, y] = 0 对所有 s}；x 可为元素或元素列表"""
        elements = x if isinstance(x, (list, tuple)) else [x]
        within = within or self.full_space()
        if within.dim == 0:
            return Subspace(self)
        active = [s for s in elements if not s.is_zero()]
        if not active:
            return within
        columns = []
        for w in within.basis:
            column = []
            for s in active:
                column.extend(self.bracket_coords(s.coords, w))
            columns.append(column)
        matrix = ExactMatrix.from_columns(columns, self.field, nrows=self.dim * len(active))
        return Subspace(self, [within.combination(c).coords for c in kernel_basis(matrix)])

    def normalizer_of_line(self, e: Element, within: Optional[Subspace] = None) -> Subspace:
        """{y ∈ within : [y, e] ∈ span(e)}（加边核计算）"""
        if e.is_zero():
            raise PreconditionError("normalizer of the zero line is undefined")
        within = within or self.full_space()
        columns = [self.bracket_coords(w, e.coords) for w in within.basis]
        columns.append(tuple(-c for c in e.coords))
        matrix = ExactMatrix.from_columns(columns, self.field, nrows=self.dim)
        vectors = [within.combination(c[:-1]).coords for c in kernel_basis(matrix)]
        return Subspace(self, vectors)

    def is_subalgebra(self, space: Subspace) -> bool:
        basis = space.basis
        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                if not space.contains(self.bracket_coords(basis[a], basis[b])):
                    return False
        return True

    def _require_subalgebra(self, space: Subspace):
        if not self.is_subalgebra(space):
            raise PreconditionError("subspace is not closed under the bracket")

    def commutant(self, space: Subspace) -> Subspace:
        """[S, S]"""
        self._require_subalgebra(space)
        basis = space.basis
        brackets = [self.bracket_coords(basis[a], basis[b])
                    for a in range(len(basis)) for b in range(a + 1, len(basis))]
        return Subspace(self, brackets)

    def center_of(self, space: Subspace) -> Subspace:
        """S 中与 S 全体交换的元素"""
        self._require_subalgebra(space)
        return self.centralizer(space.elements(), within=space)

    def is_abelian(self, space: Subspace) -> bool:
        basis = space.basis
        return all(not any(self.bracket_coords(basis[a], basis[b]))
                   for a in range(len(basis)) for b in range(a + 1, len(basis)))

    def subalgebra(self, pieces: Dict[int, Subspace], name: str) -> Tuple['GradedAlgebra', List[Element]]:
        """
        由分次子空间构造子代数（新的结构常数表）及其嵌入。

        ``pieces`` maps residues to subspaces of the matching graded component.
        """
        vectors, degrees = [], []
        for k in sorted(pieces):
            for row in pieces[k].basis:
                vectors.append(row)
                degrees.append(k)
        span = Subspace(self, vectors)
        if span.dim != len(vectors):
            raise PreconditionError("graded pieces are not independent")
        columns = ExactMatrix.from_columns(vectors, self.field, nrows=self.dim)
        brackets: BracketTable = {}
        for a in range(len(vectors)):
            for b in range(a + 1, len(vectors)):
                value = self.bracket_coords(vectors[a], vectors[b])
                if not any(value):
                    continue
                coords = solve(columns, value)
                if coords is None:
                    raise PreconditionError("graded pieces are not closed under the bracket")
                brackets[(a, b)] = {k: c for k, c in enumerate(coords) if c}
        labels = [f"z{idx}" for idx in range(len(vectors))]
        sub = GradedAlgebra(name, self.field, self.modulus, labels, degrees, brackets)
        return sub, [Element(self, v) for v in vectors]

    # ---------- 序列化 ----------

    def to_dict(self) -> Dict[str, Any]:
        brackets = []
        for i in range(self.dim):
            for j in sorted(self.table[i]):
                if j > i:
                    terms = [[k, format_scalar(c, self.field)] for k, c in sorted(self.table[i][j].items())]
                    brackets.append([i, j, terms])
        doc = {
            'name': self.name,
            'scalar': field_tag(self.field),
            'modulus': self.modulus,
            'basis': list(self.labels),
            'degrees': list(self.degrees),
            'brackets': brackets,
        }
        extras = dict(self.extras)
        if not self.center.is_trivial():
            extras['center'] = {
                'generators': [_matrix_to_list(g, self.field) for g in self.center.generators],
                'orders': list(self.center.orders),
            }
        if extras:
            doc['extras'] = extras
        return doc

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> 'GradedAlgebra':
        """由 JSON 文档构造（文档须已通过 schema 校验）"""
        field = field_from_tag(doc.get('scalar', 'Q'))
        brackets: BracketTable = {}
        for entry in doc.get('brackets', []):
            i, j, terms = entry
            parsed = {}
            for k, c in terms:
                parsed[k] = parsed.get(k, field.zero) + parse_scalar(c, field)
            key = (i, j)
            if key in brackets:
                raise InputError(f"bracket ({i}, {j}) given twice")
            brackets[key] = parsed
        extras = dict(doc.get('extras', {}))
        center = None
        n = len(doc['basis'])
        if 'center' in extras:
            spec = extras.pop('center')
            center = CenterData(
                generators=[_matrix_from_list(g, n, field) for g in spec.get('generators', [])],
                orders=list(spec.get('orders', [])),
            )
        return cls(doc['name'], field, int(doc['modulus']), doc['basis'], doc['degrees'],
                   brackets, center=center, extras=extras)

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.name}, dim={self.dim}, m={self.modulus}, field={field_tag(self.field)})"


def _trace_of_product(a: ExactMatrix, b: ExactMatrix, field: Domain):
    acc = field.zero
    b_rows = b.rows
    for k, row in a.rows.items():
        for l, v in row.items():
            w = b_rows.get(l, {}).get(k)
            if w:
                acc += v * w
    return acc


def _matrix_to_list(matrix: ExactMatrix, field: Domain) -> List[list]:
    return [[i, j, format_scalar(v, field)] for (i, j), v in sorted(matrix.to_dok().items())]


def _matrix_from_list(entries: Sequence, n: int, field: Domain) -> ExactMatrix:
    dok = {}
    for i, j, c in entries:
        if not (0 <= i < n and 0 <= j < n):
            raise InputError(f"matrix entry ({i}, {j}) out of range for dimension {n}")
        dok[(i, j)] = parse_scalar(c, field)
    return ExactMatrix.from_dok(dok, (n, n), field)


def element_from_dict(algebra: GradedAlgebra, doc: Dict[str, Any]) -> Element:
    """Element JSON: {algebra, coords} 或 {algebra, terms: {label: c}}"""
    if doc.get('algebra') not in (None, algebra.name):
        raise InputError(f"element refers to algebra {doc.get('algebra')!r}, "
                         f"expected {algebra.name!r}")
    if 'coords' in doc:
        coords = [parse_scalar(c, algebra.field) for c in doc['coords']]
        return Element(algebra, coords)
    if 'terms' in doc:
        return algebra.from_terms(doc['terms'])
    raise InputError("element document needs 'coords' or 'terms'")


def element_to_dict(x: Element) -> Dict[str, Any]:
    return {'algebra': x.algebra.name, 'coords': x.to_strings()}


# ==================== 公理验证 ====================

@dataclass
class AxiomReport:
    """verify_axioms 的结果"""
    algebra: str
    passed: bool
    violations: List[Dict[str, Any]] = field(default_factory=list)
    checked_triples: int = 0
    killing: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'algebra': self.algebra,
            'passed': self.passed,
            'first_violation': self.violations[0] if self.violations else None,
            'violation_count': len(self.violations),
            'checked_triples': self.checked_triples,
            'killing': self.killing,
        }


def _jacobi_value(table, i: int, j: int, k: int, field: Domain) -> Dict[int, Any]:
    acc: Dict[int, Any] = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        inner = table[b].get(c)
        if not inner:
            continue
        outer_row = table[a]
        for l, x in inner.items():
            outer = outer_row.get(l)
            if outer:
                for m, y in outer.items():
                    acc[m] = acc.get(m, field.zero) + x * y
    return {m: v for m, v in acc.items() if v}


def _jacobi_chunk(algebra: GradedAlgebra, rows: Sequence[int]) -> Tuple[List[Tuple], int]:
    table = algebra.table
    failures, checked = [], 0
    for i in rows:
        for j in range(i + 1, algebra.dim):
            candidates = set(table[i]) | set(table[j])
            for l in table[i].get(j, {}):
                candidates |= set(table[l])
            for k in sorted(c for c in candidates if c > j):
                checked += 1
                value = _jacobi_value(table, i, j, k, algebra.field)
                if value:
                    failures.append((i, j, k, value))
    return failures, checked


def killing_signature(algebra: GradedAlgebra) -> Optional[Tuple[int, int, int]]:
    """Killing 型的符号差 (正, 负, 零)；维数过大时返回 None"""
    if algebra.field != QQ or algebra.dim > 64:
        return None
    gram = algebra.killing_gram(range(algebra.dim), range(algebra.dim))
    coeffs = list(ExactMatrix.from_rows(gram, QQ).rep.to_dense().charpoly())
    zero_roots = 0
    while coeffs and not coeffs[-1]:
        coeffs.pop()
        zero_roots += 1

    def sign_changes(values):
        signs = [1 if v > 0 else -1 for v in values if v]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    degree = len(coeffs) - 1
    negated = [c * (-1) ** (degree - idx) for idx, c in enumerate(coeffs)]
    return sign_changes(coeffs), sign_changes(negated), zero_roots


def verify_axioms(algebra: GradedAlgebra, threads: int = 1,
                  raise_on_violation: bool = False) -> AxiomReport:
    """反对称性、Jacobi 恒等式、次数可加性、Killing 型非退化"""
    report = AxiomReport(algebra=algebra.name, passed=True)
    labels = algebra.labels

    for i, j in algebra.antisymmetry_issues:
        report.violations.append({
            'kind': 'antisymmetry',
            'triple': [labels[i], labels[j]],
            'message': f"bracket of ({labels[i]}, {labels[j]}) is not antisymmetric",
        })

    m = algebra.modulus
    for i in range(algebra.dim):
        for j, terms in algebra.table[i].items():
            if j < i:
                continue
            for k in terms:
                if (algebra.degrees[i] + algebra.degrees[j] - algebra.degrees[k]) % m:
                    report.violations.append({
                        'kind': 'degree',
                        'triple': [labels[i], labels[j], labels[k]],
                        'message': f"[{labels[i]}, {labels[j]}] has a component along "
                                   f"{labels[k]} of the wrong degree",
                    })

    threads = max(1, int(threads))
    rows = list(range(algebra.dim))
    chunks = [rows[t::threads] for t in range(threads)]
    if threads == 1:
        results = [_jacobi_chunk(algebra, chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(lambda chunk: _jacobi_chunk(algebra, chunk), chunks))
    failures = sorted((f for chunk_failures, _ in results for f in chunk_failures),
                      key=lambda f: f[:3])
    report.checked_triples = sum(count for _, count in results)
    for i, j, k, value in failures:
        residue = Element(algebra, [value.get(t, algebra.field.zero) for t in range(algebra.dim)])
        report.violations.append({
            'kind': 'jacobi',
            'triple': [labels[i], labels[j], labels[k]],
            'message': f"Jacobi fails at ({labels[i]}, {labels[j]}, {labels[k]}): "
                       f"sum is {residue.describe()}",
        })

    blocks = []
    nondegenerate = True
    for a in range(m):
        b = (-a) % m
        if b < a:
            continue
        rows_a, rows_b = algebra.degree_indices(a), algebra.degree_indices(b)
        if len(rows_a) != len(rows_b):
            rank = min(len(rows_a), len(rows_b))
            full = False
        else:
            rank = matrix_rank(ExactMatrix.from_rows(algebra.killing_gram(rows_a, rows_b),
                                                     algebra.field, ncols=len(rows_b))) if rows_a else 0
            full = rank == len(rows_a)
        blocks.append({'degrees': [a, b], 'size': [len(rows_a), len(rows_b)], 'rank': rank,
                       'nondegenerate': full})
        nondegenerate = nondegenerate and full
    report.killing = {'nondegenerate': nondegenerate, 'blocks': blocks}
    signature = killing_signature(algebra)
    if signature is not None:
        report.killing['signature'] = list(signature)
    if not nondegenerate:
        report.violations.append({
            'kind': 'killing',
            'triple': [],
            'message': "Killing form is degenerate: the algebra is not semisimple",
        })

    report.passed = not report.violations
    if report.violations:
        logger.warning(f"{algebra.name}: {len(report.violations)} axiom violations, first: "
                       f"{report.violations[0]['message']}")
        if raise_on_violation:
            first = report.violations[0]
            raise AxiomViolation(first['message'], triple=tuple(first['triple']))
    else:
        logger.info(f"{algebra.name}: axioms verified on {report.checked_triples} triples")
    return report
