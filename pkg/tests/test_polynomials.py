# -*- coding: utf-8 -*-
import math
from fractions import Fraction

import numpy as np
import pytest
from sympy import QQ, Rational, real_roots

from core.exceptions import ComputationError
from core.polynomials import (component_index, gap_samples, make_poly, positive_components,
                              positive_on_unit_interval, root_intervals, simplest_rational_between, squarefree_part,
                              sturm_components)


def test_simplest_rational_between():
    assert simplest_rational_between(Fraction(-1), Fraction(1)) == 0
    assert simplest_rational_between(None, Fraction(0)) == -1
    assert simplest_rational_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert simplest_rational_between(Fraction(-1, 2), Fraction(-1, 3)) == Fraction(-2, 5)
    with pytest.raises(ComputationError):
        simplest_rational_between(Fraction(1), Fraction(1))


def test_components_of_square():
    # 4t² > 0 on two half-lines
    poly = make_poly([0, 0, 4])
    components = positive_components(poly)
    assert [c.sample for c in components] == [Fraction(-1), Fraction(1)]
    assert component_index(poly, Fraction(-3)) == 0
    assert component_index(poly, Fraction(1, 7)) == 1
    assert component_index(poly, 0) is None


def test_components_with_negative_middle():
    # (t - 1)(t - 2) > 0 outside [1, 2]
    poly = make_poly([2, -3, 1])
    assert sturm_components(poly) == 2
    # -(t² - 1) > 0 only on (-1, 1)
    assert sturm_components(make_poly([1, 0, -1])) == 1


def test_positive_on_unit_interval():
    assert positive_on_unit_interval(make_poly([1, 0, 1]))
    assert not positive_on_unit_interval(make_poly([QQ(-1, 2), 1]))
    assert not positive_on_unit_interval(make_poly([0, 1]))


def test_squarefree_part():
    assert squarefree_part(make_poly([0, 0, 0, 1])) == make_poly([0, 1])
    assert squarefree_part(make_poly([-1, 0, 1])) == make_poly([-1, 0, 1])
    # (t-1)^2 (t+2)
    assert squarefree_part(make_poly([2, -3, 0, 1])) == make_poly([-2, 1, 1])
    with pytest.raises(ComputationError):
        squarefree_part(make_poly([]))


def test_rational_root_next_to_an_irrational_one():
    # 2t⁴ - 5t³ + 2t² + 1 = (t - 1)(2t³ - 3t² - t - 1): roots 1 and one root in (1, 2)
    poly = make_poly([1, 0, 2, -5, 2])
    intervals = root_intervals(poly)
    assert len(intervals) == 2
    assert intervals[0][0] <= 1 <= intervals[0][1]
    assert intervals[0][1] < intervals[1][0]
    assert all(poly.eval(Rational(s.numerator, s.denominator)) != 0 for _, _, s in gap_samples(poly))
    assert sturm_components(poly) == 2
    assert component_index(poly, Fraction(1, 2)) == 0


def _sign_oracle(poly):
    """在精确实根之间取点数正号区间"""
    roots = real_roots(poly.sqf_part())
    if not roots:
        points = [Rational(0)]
    else:
        approximations = [r.evalf(60) for r in roots]
        points = [Rational(math.floor(approximations[0]) - 1)]
        points += [Rational((a + b) / 2) for a, b in zip(approximations, approximations[1:])]
        points.append(Rational(math.ceil(approximations[-1]) + 1))
    return sum(1 for p in points if poly.eval(p) > 0)


def test_component_counts_match_sign_oracle():
    rng = np.random.default_rng(2024)
    for index in range(100):
        degree = int(rng.integers(0, 7))
        coefficients = [int(c) for c in rng.integers(-4, 5, size=degree + 1)]
        coefficients[-1] = coefficients[-1] or 1
        poly = make_poly(coefficients)
        if index % 3 == 0:
            # a repeated rational root
            poly = poly * make_poly([-int(rng.integers(-2, 3)), 1]) ** 2
        assert sturm_components(poly) == _sign_oracle(poly), coefficients
