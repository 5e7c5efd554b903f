# -*- coding: utf-8 -*-
"""
k-向量分析模块
Λ⁴ℝ⁸ ≅ g_1(e₇) 与 Λ³ℝ⁹ ≅ g_1(e₈) 的坐标识别，以及 k-向量/形式的轨道分析。
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from sympy import QQ

from core.catalog import SlBasis, build_catalog
from core.exceptions import InputError
from core.exterior import FORM, VECTOR, MultiVector, index_tuples, poincare_dual, tuple_positions
from core.jordan import jmv_triple, jordan_decompose
from core.lie import Element, GradedAlgebra, element_to_dict
from core.nilclass import characteristic_fingerprint, is_generic
from core.z2_orbits import cartan_decomposition, mixed_normal_form

logger = logging.getLogger(__name__)

SUPPORTED_MODELS: Dict[Tuple[int, int], str] = {
    (8, 4): 'e7-split-z2',
    (9, 3): 'e8-split-z3',
}

PADDING_CAVEAT = ("3-vector on R^8 padded into R^9: GL(8)- and GL(9)-orbits differ, "
                  "only nilpotency and characteristic invariants carry over")
CONTRAGREDIENT_NOTE = "form read as a k-vector through e^I -> e_I (contragredient action)"
GL_NOTE = ("GL(n)-orbits are unions of SL(n)-orbits of positive rescalings; "
           "the representative is scaled so its leading coefficient is +1 or -1")


def model_for(n: int, k: int) -> str:
    name = SUPPORTED_MODELS.get((n, k))
    if name is None:
        supported = ', '.join(f"(n={a}, k={b}) -> {m}" for (a, b), m in SUPPORTED_MODELS.items())
        raise InputError(f"no Lie model for {k}-vectors on R^{n}; supported: {supported}")
    return name


def _layout(algebra: GradedAlgebra) -> Dict[str, int]:
    model = algebra.extras.get('exterior_model')
    if model is None:
        raise InputError(f"{algebra.name} has no exterior model")
    return model


# ==================== 坐标识别 ====================

def to_lie_element(w: MultiVector, algebra: Optional[GradedAlgebra] = None) -> Element:
    """e_T ↦ g_1 中的权向量 e_T（坐标上为恒等映射）"""
    if w.kind != VECTOR:
        raise InputError("forms must be turned into k-vectors before embedding")
    algebra = algebra or build_catalog(model_for(w.n, w.k))
    model = _layout(algebra)
    if (model['n'], model['k']) != (w.n, w.k):
        raise InputError(f"{algebra.name} models {model['k']}-vectors on R^{model['n']}, "
                         f"got a {w.k}-vector on R^{w.n}")
    positions = tuple_positions(w.n, w.k)
    coords = [algebra.field.zero] * algebra.dim
    for key, value in w.terms.items():
        coords[model['offset'] + positions[key]] = algebra.field.convert(value)
    return Element(algebra, coords)


def from_lie_element(x: Element) -> MultiVector:
    model = _layout(x.algebra)
    if not x.is_homogeneous(1):
        raise InputError(f"{x.describe()} is not a degree-1 element")
    n, k, offset = model['n'], model['k'], model['offset']
    terms = {key: x.coords[offset + p] for p, key in enumerate(index_tuples(n, k)) if x.coords[offset + p]}
    return MultiVector(n, k, terms, VECTOR)


def sl_element(algebra: GradedAlgebra, matrix: Dict[Tuple[int, int], Any]) -> Element:
    """ι：sl(n) 中的无迹矩阵 ↦ g_0 中的元素"""
    model = _layout(algebra)
    coords = [algebra.field.zero] * algebra.dim
    for idx, value in SlBasis(model['n']).coords_of(matrix).items():
        coords[idx] = algebra.field.convert(value)
    return Element(algebra, coords)


# ==================== 预处理 ====================

def prepare_kvector(w: MultiVector, dualize: bool = False) -> Tuple[MultiVector, List[str]]:
    """
    把输入整理成受支持模型中的 k-向量。

    Forms are Poincaré-dualized when ``dualize`` is set, otherwise read
    through the dual basis. 3-vectors on R^8 are padded into R^9.
    """
    notes: List[str] = []
    if w.kind == FORM:
        if dualize:
            w = poincare_dual(w)
            if (w.n, w.k) == (9, 6):
                # Λ⁶ℝ⁹ is the degree -1 (= 2) part of e8-split-z3, not g_1
                raise InputError("the Poincare dual of a 3-form on R^9 is a 6-vector, which lies in "
                                 "g_-1 of e8-split-z3; analyze the 3-form without --dualize")
            notes.append(f"Poincare dual taken: {w.n - w.k}-form -> {w.k}-vector")
        else:
            w = MultiVector(w.n, w.k, dict(w.terms), VECTOR)
            notes.append(CONTRAGREDIENT_NOTE)
    if (w.n, w.k) == (8, 3):
        w = MultiVector(9, 3, dict(w.terms), VECTOR)
        notes.append(PADDING_CAVEAT)
    model_for(w.n, w.k)
    return w, notes


def gl_normalize(w: MultiVector) -> MultiVector:
    """正数缩放使首项系数为 ±1"""
    if w.is_zero():
        return w
    leading = w.terms[min(w.terms)]
    return w.scale(QQ.one / abs(leading))


# ==================== 分析 ====================

@dataclass
class KVectorReport:
    multivector: MultiVector
    model: str
    kind: str
    element: Element
    notes: List[str] = field(default_factory=list)
    semisimple: Optional[Element] = None
    nilpotent: Optional[Element] = None
    characteristic: Optional[Element] = None
    fingerprint: Optional[Dict[str, Any]] = None
    generic: Optional[bool] = None
    normal_form: Optional[Dict[str, Any]] = None
    representative: Optional[MultiVector] = None

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'model': self.model,
            'kind': self.kind,
            'multivector': self.multivector.to_dict(),
            'element': element_to_dict(self.element),
            'notes': list(self.notes),
        }
        if self.representative is not None:
            doc['gl_representative'] = self.representative.to_dict()
        for key in ('semisimple', 'nilpotent', 'characteristic'):
            value = getattr(self, key)
            if value is not None:
                doc[key] = element_to_dict(value)
        if self.fingerprint is not None:
            doc['fingerprint'] = self.fingerprint
        if self.generic is not None:
            doc['generic'] = self.generic
        if self.normal_form is not None:
            doc['normal_form'] = self.normal_form
        return doc


def analyze_kvector(w: MultiVector, dualize: bool = False, algebra: Optional[GradedAlgebra] = None,
                    normal_form: bool = True) -> KVectorReport:
    """
    嵌入李模型后做 Jordan 分解、特征元与一般性分析。

    Nilpotent inputs get a graded sl2-triple, the fingerprint of its
    characteristic and the genericity verdict in the characteristic slice.
    For Z_2 models the elliptic/vector/nilpotent normal form is attached.
    """
    vector, notes = prepare_kvector(w, dualize)
    name = model_for(vector.n, vector.k)
    algebra = algebra or build_catalog(name)
    x = to_lie_element(vector, algebra)
    notes.append(GL_NOTE)
    report = KVectorReport(vector, name, 'zero', x, notes, representative=gl_normalize(vector))
    if x.is_zero():
        report.notes.append("zero orbit: trivially semisimple and nilpotent")
        report.semisimple, report.nilpotent = x, x
        return report

    pair = jordan_decompose(x)
    report.semisimple, report.nilpotent = pair.semisimple, pair.nilpotent
    if pair.semisimple.is_zero():
        report.kind = 'nilpotent'
    elif pair.nilpotent.is_zero():
        report.kind = 'semisimple'
    else:
        report.kind = 'mixed'

    if report.kind == 'nilpotent':
        h = jmv_triple(x).h
        report.characteristic = h
        report.fingerprint = characteristic_fingerprint(h).to_dict()
        report.generic = is_generic(x)

    if normal_form and algebra.modulus == 2:
        report.normal_form = mixed_normal_form(x, cartan_decomposition(algebra)).to_dict()
    logger.info(f"{report.kind} {vector.k}-vector on R^{vector.n} in {name}")
    return report
