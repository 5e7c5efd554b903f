# -*- coding: utf-8 -*-
import numpy as np
import pytest

from core.exceptions import InputError
from core.exterior import FORM, MultiVector, lie_action, random_multivector
from core.kvectors import (CONTRAGREDIENT_NOTE, PADDING_CAVEAT, analyze_kvector, from_lie_element, gl_normalize,
                           model_for, prepare_kvector, sl_element, to_lie_element)


def test_supported_models():
    assert model_for(8, 4) == 'e7-split-z2'
    assert model_for(9, 3) == 'e8-split-z3'
    with pytest.raises(InputError, match="supported"):
        model_for(6, 3)


def test_prepare_pads_three_vectors_on_r8():
    w, notes = prepare_kvector(MultiVector(8, 3, {(1, 2, 3): 1}))
    assert (w.n, w.k) == (9, 3)
    assert w.terms == {(1, 2, 3): 1}
    assert notes == [PADDING_CAVEAT]


def test_prepare_forms():
    phi = MultiVector(8, 4, {(1, 2, 3, 4): 1}, FORM)
    w, notes = prepare_kvector(phi)
    assert w == MultiVector(8, 4, {(1, 2, 3, 4): 1})
    assert notes == [CONTRAGREDIENT_NOTE]
    dual, notes = prepare_kvector(phi, dualize=True)
    assert dual == MultiVector(8, 4, {(5, 6, 7, 8): 1})
    assert notes[0].startswith("Poincare dual taken")


def test_prepare_refuses_to_dualize_three_forms_on_r9():
    phi = MultiVector(9, 3, {(1, 2, 3): 1}, FORM)
    with pytest.raises(InputError, match="without --dualize"):
        prepare_kvector(phi, dualize=True)
    w, notes = prepare_kvector(phi)
    assert (w.n, w.k) == (9, 3)
    assert notes == [CONTRAGREDIENT_NOTE]


def test_prepare_rejects_unsupported_shape():
    with pytest.raises(InputError):
        prepare_kvector(MultiVector(7, 3, {(1, 2, 3): 1}))


def test_gl_normalize():
    w = MultiVector(8, 4, {(1, 2, 3, 4): -3, (5, 6, 7, 8): 6})
    assert gl_normalize(w) == MultiVector(8, 4, {(1, 2, 3, 4): -1, (5, 6, 7, 8): 2})
    assert gl_normalize(MultiVector.zero(8, 4)).is_zero()


@pytest.mark.slow
def test_embedding_is_equivariant(e7):
    w = MultiVector(8, 4, {(1, 2, 3, 4): 1, (2, 5, 6, 8): -2, (1, 3, 7, 8): 3})
    x = {(1, 2): 1, (5, 3): 2, (3, 3): 1, (4, 4): -1}
    lie = to_lie_element(w, e7)
    assert from_lie_element(lie) == w
    assert sl_element(e7, x).bracket(lie) == to_lie_element(lie_action(x, w), e7)


@pytest.mark.slow
def test_embedding_rejects_wrong_model(e7):
    with pytest.raises(InputError):
        to_lie_element(MultiVector(9, 3, {(1, 2, 3): 1}), e7)
    with pytest.raises(InputError):
        from_lie_element(e7.from_terms({'H1': 1}))


@pytest.mark.slow
def test_analyze_decomposable_four_vector(e7):
    report = analyze_kvector(MultiVector(8, 4, {(1, 2, 3, 4): 2}), algebra=e7)
    assert report.model == 'e7-split-z2'
    assert report.kind == 'nilpotent'
    assert report.characteristic is not None
    assert report.fingerprint is not None
    doc = report.to_dict()
    assert doc['gl_representative']['terms'] == [[[1, 2, 3, 4], '1']]
    assert doc['normal_form']['standard_position'] is True


@pytest.mark.slow
def test_analyze_zero_vector(e7):
    report = analyze_kvector(MultiVector.zero(8, 4), algebra=e7)
    assert report.kind == 'zero'
    assert report.semisimple.is_zero() and report.nilpotent.is_zero()


def _random_sl(rng, n, entries=4):
    """随机无迹整数矩阵（字典形式）"""
    matrix = {}
    for _ in range(entries):
        r, c = (int(v) + 1 for v in rng.choice(n, size=2, replace=False))
        matrix[(r, c)] = int(rng.integers(-3, 4)) or 1
    diagonal = [int(v) for v in rng.integers(-2, 3, size=n - 1)]
    for i, v in enumerate(diagonal, start=1):
        matrix[(i, i)] = v
    matrix[(n, n)] = -sum(diagonal)
    return matrix


@pytest.mark.slow
@pytest.mark.parametrize('name,n,k', [('e7', 8, 4), ('e8', 9, 3)])
def test_embedding_is_equivariant_on_random_pairs(request, name, n, k):
    algebra = request.getfixturevalue(name)
    rng = np.random.default_rng(k)
    for _ in range(50):
        w = random_multivector(rng, n, k, terms=int(rng.integers(1, 5)))
        x = _random_sl(rng, n)
        assert sl_element(algebra, x).bracket(to_lie_element(w, algebra)) == \
            to_lie_element(lie_action(x, w), algebra)
