# -*- coding: utf-8 -*-
import pytest
from sympy import QQ

from core.exceptions import PreconditionError
from core.lie import Subspace
from core.linalg import ExactMatrix
from core.z2_orbits import (CONJUGATE, DISTINCT, UNDECIDED, cartan_decomposition, elliptic_vector_split,
                            is_elliptic, mixed_conjugacy, mixed_normal_form, restricted_weyl_group,
                            semisimple_orbit_equivalent, split_cartan_subspace, standard_cartan_check)


@pytest.fixture
def diag_cartan(sl2_diag):
    return cartan_decomposition(sl2_diag)


def _line(algebra, **terms):
    return Subspace.span(algebra, [algebra.from_terms(terms)])


def test_cartan_decomposition_of_graded_sl2(sl2_diag, diag_cartan):
    assert diag_cartan.k == _line(sl2_diag, E=1, F=-1)
    assert diag_cartan.p == Subspace.span(sl2_diag, [sl2_diag.from_terms({'H': 1}),
                                                     sl2_diag.from_terms({'E': 1, 'F': 1})])
    assert diag_cartan.to_dict()['dims'] == {'k0': 0, 'k1': 1, 'p0': 1, 'p1': 1}
    assert diag_cartan.killing == {'k': 'negative', 'p': 'positive'}
    k_part, p_part = diag_cartan.project(sl2_diag.from_terms({'E': 1}))
    assert k_part == sl2_diag.from_terms({'E': '1/2', 'F': '-1/2'})
    assert p_part == sl2_diag.from_terms({'E': '1/2', 'F': '1/2'})


def test_cartan_decomposition_of_complex_sl2(a6):
    decomposition = cartan_decomposition(a6)
    assert decomposition.k.dim == decomposition.p.dim == 3
    assert decomposition.killing['k'] == 'negative'


def test_rejects_non_cartan_involutions(sl2_diag):
    identity = ExactMatrix.identity(3, QQ)
    with pytest.raises(PreconditionError, match="not a Cartan involution"):
        cartan_decomposition(sl2_diag, identity)
    with pytest.raises(PreconditionError, match="not an involution"):
        cartan_decomposition(sl2_diag, identity.scale(QQ(2)))


def test_standard_cartan_check(sl2_diag, diag_cartan):
    assert standard_cartan_check(_line(sl2_diag, E=1, F=1), diag_cartan)
    assert not standard_cartan_check(_line(sl2_diag, E=1, F=2), diag_cartan)
    with pytest.raises(PreconditionError, match="not semisimple"):
        standard_cartan_check(_line(sl2_diag, E=1), diag_cartan)
    with pytest.raises(PreconditionError, match="not inside g_1"):
        standard_cartan_check(_line(sl2_diag, H=1), diag_cartan)


def test_split_cartan_subspace(sl2_diag, diag_cartan):
    compact, vector = split_cartan_subspace(_line(sl2_diag, E=1, F=1), diag_cartan)
    assert compact.dim == 0 and vector.dim == 1
    with pytest.raises(PreconditionError):
        split_cartan_subspace(_line(sl2_diag, E=1, F=2), diag_cartan)


def test_elliptic_elements(sl2_diag):
    assert is_elliptic(sl2_diag.from_terms({'E': 1, 'F': -1}))
    assert not is_elliptic(sl2_diag.from_terms({'E': 1, 'F': 1}))
    assert not is_elliptic(sl2_diag.from_terms({'E': 1}))


def test_elliptic_vector_split(sl2_diag, diag_cartan):
    s = sl2_diag.from_terms({'E': 1, 'F': 1})
    h_k, h_p = elliptic_vector_split(s, diag_cartan)
    assert h_k.is_zero() and h_p == s
    with pytest.raises(PreconditionError, match="standard position"):
        elliptic_vector_split(sl2_diag.from_terms({'E': '3/2', 'F': '1/2'}), diag_cartan)
    with pytest.raises(PreconditionError, match="not semisimple"):
        elliptic_vector_split(sl2_diag.from_terms({'E': 1}), diag_cartan)


def test_restricted_weyl_group(sl2_diag, diag_cartan):
    line = _line(sl2_diag, E=1, F=1)
    group = restricted_weyl_group(line, diag_cartan)
    assert group.order == 2
    x = sl2_diag.from_terms({'E': 1, 'F': 1})
    assert group.conjugating_word(x, x.scale(-1)) == (0,)
    assert group.conjugating_word(x, x.scale(2)) is None
    assert group.to_dict()['generators'] == [[['-1']]]
    assert restricted_weyl_group(line, diag_cartan, allow_graded_generators=False).order == 1


def test_weyl_group_needs_split_subspace(sl2_diag, diag_cartan):
    with pytest.raises(PreconditionError):
        restricted_weyl_group(_line(sl2_diag, E=1), diag_cartan)


def test_mixed_normal_form(sl2_diag, diag_cartan):
    form = mixed_normal_form(sl2_diag.from_terms({'E': 1, 'F': 1}), diag_cartan)
    assert form.standard_position and form.commuting
    assert form.e_n.is_zero()
    nilpotent = mixed_normal_form(sl2_diag.from_terms({'E': 1}), diag_cartan)
    assert nilpotent.semisimple.is_zero()
    assert nilpotent.to_dict()['standard_position'] is True


def test_vector_parts_conjugate_by_weyl_reflection(sl2_diag, diag_cartan):
    x = sl2_diag.from_terms({'E': 1, 'F': 1})
    verdict = mixed_conjugacy(x, x.scale(-1), diag_cartan)
    assert (verdict.verdict, verdict.stage) == (CONJUGATE, 'vector')
    assert verdict.certificate['word'] == [0]


def test_vector_parts_with_different_spectra(sl2_diag, diag_cartan):
    x = sl2_diag.from_terms({'E': 1, 'F': 1})
    verdict = mixed_conjugacy(x, x.scale(2), diag_cartan)
    assert (verdict.verdict, verdict.stage) == (DISTINCT, 'vector')


def test_identical_elements(sl2_diag):
    x = sl2_diag.from_terms({'E': 1})
    assert mixed_conjugacy(x, x).stage == 'identity'


def test_element_outside_standard_position(sl2_diag, diag_cartan):
    x = sl2_diag.from_terms({'E': '3/2', 'F': '1/2'})
    verdict = mixed_conjugacy(x, sl2_diag.from_terms({'E': 1, 'F': 1}), diag_cartan)
    assert (verdict.verdict, verdict.stage) == (UNDECIDED, 'standard-position')
    assert verdict.to_dict()['normal_forms'][0]['standard_position'] is False


def test_nilpotent_parts_in_different_components(a6):
    ie = a6.from_terms({'iE': 1})
    verdict = mixed_conjugacy(ie, ie.scale(-1))
    assert (verdict.verdict, verdict.stage) == (DISTINCT, 'nilpotent')
    assert verdict.certificate['orbit_count'] == 2


def test_mixed_conjugacy_needs_z2(sl2):
    e = sl2.from_terms({'E': 1})
    with pytest.raises(PreconditionError):
        mixed_conjugacy(e, e.scale(2))


def test_semisimple_orbit_equivalent(sl2_diag, diag_cartan):
    group = restricted_weyl_group(_line(sl2_diag, E=1, F=1), diag_cartan)
    x = sl2_diag.from_terms({'E': 1, 'F': 1})
    assert semisimple_orbit_equivalent(x, x, group)
    assert semisimple_orbit_equivalent(x, x.scale(-1), group)
    assert not semisimple_orbit_equivalent(x, x.scale(2), group)
