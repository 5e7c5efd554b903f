# -*- coding: utf-8 -*-
from fractions import Fraction

import numpy as np
import pytest
from sympy import QQ, Matrix, eye, zeros

from core.catalog import build_sl
from core.exceptions import ComputationError, NotNilpotentError, PreconditionError
from core.jordan import (characteristic, conjugate_characteristics, is_nilpotent, is_semisimple, jmv_triple,
                         jordan_decompose, scaling_diagnostic, u_subspace)
from core.lie import Element, Subspace
from core.linalg import nilpotent_exp


@pytest.fixture
def sl3():
    return build_sl(3)


def test_nilpotent_and_semisimple(sl2, a6):
    e, h, f = (sl2.basis_element(i) for i in range(3))
    assert is_nilpotent(e) and not is_semisimple(e)
    assert is_semisimple(h) and not is_nilpotent(h)
    assert is_semisimple(e + f)
    assert is_nilpotent(a6.from_terms({'iE': 1}))


def test_jordan_of_pure_elements(sl2):
    e, h, _ = (sl2.basis_element(i) for i in range(3))
    pair = jordan_decompose(e)
    assert pair.semisimple.is_zero() and pair.nilpotent == e
    pair = jordan_decompose(h)
    assert pair.semisimple == h and pair.nilpotent.is_zero()


def test_jordan_of_mixed_element(sl3):
    # diag(1, 1, -2) + E12
    x = sl3.from_terms({'H1': 1, 'H2': 2, 'E12': 1})
    pair = jordan_decompose(x)
    assert pair.semisimple == sl3.from_terms({'H1': 1, 'H2': 2})
    assert pair.nilpotent == sl3.from_terms({'E12': 1})
    assert set(pair.to_dict()) == {'xs', 'xn'}


def test_jmv_triple_on_graded_sl2(sl2_diag):
    e = sl2_diag.from_terms({'E': 1})
    triple = jmv_triple(e)
    assert triple.relations_hold()
    assert triple.h == sl2_diag.from_terms({'H': 1})
    assert triple.f == sl2_diag.from_terms({'F': 1})
    assert triple.uniqueness_dim == 0


def test_jmv_triple_on_complex_sl2(a6):
    triple = jmv_triple(a6.from_terms({'iE': 1}))
    assert triple.h == a6.from_terms({'H': 1})
    assert triple.f == a6.from_terms({'iF': -1})
    assert triple.h.degree() == 0 and triple.f.degree() == 1


def test_characteristic_ignores_scaling(sl2_diag, a6):
    h = sl2_diag.from_terms({'H': 1})
    assert characteristic(sl2_diag.from_terms({'E': 1})) == h
    assert characteristic(sl2_diag.from_terms({'E': 2})) == h
    assert characteristic(a6.from_terms({'iE': 1})) == a6.from_terms({'H': 1})


def test_jmv_triple_preconditions(sl2_diag):
    with pytest.raises(PreconditionError):
        jmv_triple(sl2_diag.zero())
    with pytest.raises(PreconditionError):
        jmv_triple(sl2_diag.from_terms({'H': 1}))
    with pytest.raises(NotNilpotentError):
        jmv_triple(sl2_diag.from_terms({'E': 1, 'F': 1}))


def test_u_subspace_of_sl3_root_vector(sl3):
    e = sl3.from_terms({'E12': 1})
    expected = Subspace.span(sl3, [sl3.from_terms({label: 1}) for label in ('E12', 'E13', 'E32')])
    assert u_subspace(e) == expected


def test_conjugate_characteristics(sl3):
    e = sl3.from_terms({'E12': 1})
    h = sl3.from_terms({'H1': 1})
    h_prime = sl3.from_terms({'H1': 1, 'E13': -1})
    conjugation = conjugate_characteristics(e, h, h_prime)
    assert conjugation.z == sl3.from_terms({'E13': 1})
    assert conjugation.eigenvalues == [1, 2]
    assert conjugation.to_dict()['ad_h_eigenvalues'] == [1, 2]


def test_conjugate_characteristics_rejects_foreign_h(sl3):
    e = sl3.from_terms({'E12': 1})
    with pytest.raises(PreconditionError, match="not characteristics of the same e"):
        conjugate_characteristics(e, sl3.from_terms({'H1': 1}), sl3.from_terms({'H2': 1}))


def test_conjugate_characteristics_needs_h_in_image_of_e(sl3):
    e = sl3.from_terms({'E12': 1})
    # diag(2, 0, -2): [h, e] = 2e in degree 0, but h is not of the form [e, f]
    h = sl3.from_terms({'H1': 2, 'H2': 2})
    assert h.bracket(e) == e.scale(2)
    with pytest.raises(PreconditionError, match=r"not in \[e, g_-1\]"):
        conjugate_characteristics(e, h, h)


def test_scaling_diagnostic_components(sl3):
    e = sl3.from_terms({'E12': 1, 'E13': 1})
    certificate = scaling_diagnostic(e, sl3.from_terms({'H1': 1}))
    assert [value for value, _ in certificate.components] == [Fraction(1, 2), Fraction(1)]
    assert certificate.components[0][1] == sl3.from_terms({'E13': 1})
    assert certificate.components[1][1] == sl3.from_terms({'E12': 1})


def test_scaling_diagnostic_rejects_negative_weight(sl2):
    e, h, f = (sl2.basis_element(i) for i in range(3))
    with pytest.raises(ComputationError):
        scaling_diagnostic(e + f, h)
    assert scaling_diagnostic(sl2.zero(), h).components == []


def _ad_oracles(x):
    """由 ad x 的特征多项式独立判定幂零与半单"""
    ad = x.algebra.ad_matrix(x)
    m = Matrix([[x.algebra.field.to_sympy(v) for v in row] for row in ad.to_rows()])
    nilpotent = (m ** m.rows).is_zero_matrix
    radical = m.charpoly().as_poly().sqf_part()
    acc = zeros(m.rows, m.rows)
    for c in radical.all_coeffs():
        acc = acc * m + c * eye(m.rows)
    return nilpotent, acc.is_zero_matrix


def _random_element(algebra, rng, degree=None):
    indices = range(algebra.dim) if degree is None else algebra.degree_indices(degree)
    terms = {algebra.labels[i]: int(rng.integers(-2, 3)) for i in indices if rng.random() < 0.6}
    return algebra.from_terms(terms)


def test_jordan_decomposition_properties(sl2, sl2_diag, a6, sl3):
    rng = np.random.default_rng(17)
    graded_sl3 = build_sl(3, 'diag-involution(+,+,-)')
    for algebra in (sl2, sl2_diag, a6, sl3, graded_sl3):
        for trial in range(20):
            degree = int(rng.integers(algebra.modulus)) if trial % 2 else None
            x = _random_element(algebra, rng, degree)
            pair = jordan_decompose(x)
            xs, xn = pair.semisimple, pair.nilpotent
            assert xs + xn == x
            assert xs.bracket(xn).is_zero()
            assert is_semisimple(xs) and is_nilpotent(xn)
            nilpotent, semisimple = _ad_oracles(x)
            assert is_nilpotent(x) == nilpotent
            assert is_semisimple(x) == semisimple
            assert xs.is_zero() == nilpotent and xn.is_zero() == semisimple
            if degree is not None:
                assert xs.is_homogeneous(degree) and xn.is_homogeneous(degree)


def _conjugates(e, movers, rng, count):
    algebra = e.algebra
    images = [e]
    for _ in range(count):
        z = movers[int(rng.integers(len(movers)))].scale(QQ(int(rng.integers(1, 4)) * int(rng.choice([-1, 1])), 2))
        images.append(Element(algebra, nilpotent_exp(algebra.ad_matrix(z)).apply(images[-1].coords)))
    return images[1:]


def _check_triple(e):
    triple = jmv_triple(e)
    assert triple.relations_hold()
    assert triple.uniqueness_dim == 0
    assert triple.h.is_homogeneous(0) and triple.f.is_homogeneous(-1)
    lower = e.algebra.component_subspace(-1).elements()
    assert Subspace.span(e.algebra, [e.bracket(b) for b in lower]).contains(triple.h)


def test_jmv_triples_on_root_vectors_and_conjugates(sl2_diag, a6):
    rng = np.random.default_rng(5)
    sl3 = build_sl(3, 'diag-involution(+,+,-)')
    sl4 = build_sl(4, 'diag-involution(+,+,-,-)')
    inputs = [sl2_diag.from_terms({'E': 1}), sl2_diag.from_terms({'F': -2}), a6.from_terms({'iE': 1}),
              a6.from_terms({'iF': 1})]
    inputs += _conjugates(a6.from_terms({'iE': 1}), [a6.from_terms({'E': 1}), a6.from_terms({'F': 1})], rng, 3)
    inputs += [sl3.from_terms({label: 1}) for label in ('E13', 'E23', 'E31', 'E32')]
    inputs += _conjugates(sl3.from_terms({'E13': 1}), [sl3.from_terms({'E12': 1}), sl3.from_terms({'E21': 1})],
                          rng, 4)
    inputs += [sl4.from_terms({'E13': 1}), sl4.from_terms({'E13': 1, 'E24': 1}), sl4.from_terms({'E31': 1, 'E42': -1})]
    movers = [sl4.from_terms({label: 1}) for label in ('E12', 'E21', 'E34', 'E43')]
    inputs += _conjugates(sl4.from_terms({'E13': 1, 'E24': 1}), movers, rng, 7)
    assert len(inputs) == 25
    for e in inputs:
        assert is_nilpotent(e)
        _check_triple(e)


@pytest.mark.slow
def test_jmv_triple_on_e8_root_vector(e8):
    e = e8.from_terms({e8.labels[e8.degree_indices(1)[0]]: 1})
    _check_triple(e)
    z = e8.from_terms({'E12': 1})
    _check_triple(Element(e8, nilpotent_exp(e8.ad_matrix(z)).apply(e.coords)))
