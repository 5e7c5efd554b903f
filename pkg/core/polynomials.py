# -*- coding: utf-8 -*-
"""
单变量有理系数多项式：无平方部分、Sturm 实根隔离、正区域的连通分支。
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from sympy import Poly, QQ, Rational

from core.exceptions import ComputationError
from core.linalg import T

logger = logging.getLogger(__name__)


def make_poly(coefficients: Sequence, field=QQ) -> Poly:
    """由低次到高次的系数构造多项式"""
    return Poly([field.convert(c) for c in reversed(list(coefficients))] or [field.zero],
                T, domain=field)


def coefficients_of(poly: Poly) -> List:
    """低次在前的系数表"""
    return list(reversed(poly.all_coeffs()))


def squarefree_part(poly: Poly) -> Poly:
    """首一的无平方部分"""
    if poly.is_zero:
        raise ComputationError("squarefree part of the zero polynomial")
    return poly.sqf_part().monic()


def _rational(value) -> Rational:
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return value
    return QQ.to_sympy(QQ.convert(value))


def _fraction(value) -> Fraction:
    value = _rational(value)
    return Fraction(int(value.p), int(value.q))


def simplest_rational_between(lower: Optional[Fraction], upper: Optional[Fraction]) -> Fraction:
    """开区间 (lower, upper) 内分母最小、绝对值最小的有理数（None 表示无穷）"""
    if lower is not None and upper is not None and not lower < upper:
        raise ComputationError(f"empty interval ({lower}, {upper})")
    if (lower is None or lower < 0) and (upper is None or upper > 0):
        return Fraction(0)
    if lower is None:
        return Fraction(math.ceil(upper) - 1)
    if upper is None:
        return Fraction(math.floor(lower) + 1)
    if upper <= 0:
        return -simplest_rational_between(-upper, -lower)
    q = 1
    while True:
        p = math.floor(lower * q) + 1
        if Fraction(p, q) < upper:
            return Fraction(p, q)
        q += 1


@dataclass
class PositiveComponent:
    """p > 0 的一个连通分支（开区间，端点为实根的隔离区间）"""
    lower_root: Optional[tuple]
    upper_root: Optional[tuple]
    sample: Fraction
    gap: int = 0

    def to_dict(self) -> dict:
        def fmt(interval):
            return None if interval is None else [str(interval[0]), str(interval[1])]
        return {'lower_root': fmt(self.lower_root), 'upper_root': fmt(self.upper_root),
                'sample': str(self.sample)}


def _separated(intervals: List[tuple]) -> bool:
    return all(a[1] < b[0] for a, b in zip(intervals, intervals[1:]))


def root_intervals(poly: Poly, max_refinements: int = 64) -> List[tuple]:
    """
    不同实根的隔离区间（按顺序、两两严格分离）。

    sympy may return an exact root as a point interval touching the next
    isolating interval; the intervals are refined until neighbours no longer
    share an endpoint.
    """
    if poly.is_zero:
        raise ComputationError("real roots of the zero polynomial")
    if poly.degree() <= 0:
        return []
    sqf = poly.sqf_part()
    intervals = [(_fraction(a), _fraction(b)) for (a, b), _ in sqf.intervals()]
    width = max((b - a for a, b in intervals), default=Fraction(0))
    for _ in range(max_refinements):
        if _separated(intervals):
            return intervals
        width /= 4
        intervals = [(_fraction(a), _fraction(b)) for (a, b), _ in sqf.intervals(eps=_rational(width))]
    raise ComputationError("real root isolation did not separate the roots")


def gap_samples(poly: Poly) -> List[tuple]:
    """
    每个根间隙中的一个有理样本点。

    Returns ``(lower_interval, upper_interval, sample)`` for each of the
    ``k + 1`` open gaps cut out by the ``k`` distinct real roots.
    """
    intervals = root_intervals(poly)
    bounds = [None] + intervals + [None]
    gaps = []
    for left, right in zip(bounds, bounds[1:]):
        lo = None if left is None else left[1]
        hi = None if right is None else right[0]
        gaps.append((left, right, simplest_rational_between(lo, hi)))
    return gaps


def positive_components(poly: Poly) -> List[PositiveComponent]:
    """{x : p(x) > 0} 的连通分支"""
    components = []
    for gap, (left, right, sample) in enumerate(gap_samples(poly)):
        value = poly.eval(_rational(sample))
        if value > 0:
            components.append(PositiveComponent(left, right, sample, gap))
    # adjacent positive gaps are separated by a root of p, hence distinct
    return components


def sturm_components(poly: Poly) -> int:
    """{x : p(x) > 0} 的连通分支个数"""
    if poly.is_zero:
        raise ComputationError("connected components of the zero polynomial")
    return len(positive_components(poly))


def component_index(poly: Poly, point) -> Optional[int]:
    """点所在的正分支编号；点不在正区域时返回 None"""
    point = _rational(point)
    if poly.eval(point) <= 0:
        return None
    gap = poly.sqf_part().count_roots(None, point)
    for index, component in enumerate(positive_components(poly)):
        if component.gap == gap:
            return index
    raise ComputationError(f"point {point} not located in any positive component")


def positive_on_unit_interval(poly: Poly) -> bool:
    """证明 q(t) > 0 在 [0, 1] 上成立（Sturm 计数）"""
    if poly.is_zero:
        return False
    if poly.degree() <= 0:
        return poly.LC() > 0
    if not poly.eval(0) > 0:
        return False
    return poly.count_roots(0, 1) == 0


def describe(poly: Poly) -> dict:
    return {'coefficients': [str(c) for c in coefficients_of(poly)],
            'degree': poly.degree()}


__all__ = [
    'PositiveComponent', 'component_index', 'coefficients_of', 'describe', 'gap_samples',
    'make_poly', 'positive_components', 'positive_on_unit_interval', 'root_intervals',
    'simplest_rational_between', 'squarefree_part', 'sturm_components',
]
