# -*- coding: utf-8 -*-
import pytest
from sympy import QQ, QQ_I

from core.catalog import (CATALOG, SemilinearMap, SlBasis, automorphism_failure, build_catalog, build_sl,
                          cartan_involution, catalog_listing, chevalley_involution, complexify, parse_grading,
                          root_datum, root_functionals, root_space_decomposition, theta_automorphism)
from core.exceptions import ComputationError, InputError, PreconditionError
from core.lie import Subspace, verify_axioms
from core.linalg import ExactMatrix


def test_listing_matches_entries():
    listing = {entry['name']: entry for entry in catalog_listing()}
    assert set(listing) == set(CATALOG)
    assert listing['e7-split-z2']['dim'] == 133
    assert listing['e8-split-z3']['degree_dims'] == {'0': 80, '1': 84, '2': 84}


def test_unknown_catalog_name():
    with pytest.raises(InputError, match="unknown catalog algebra"):
        build_catalog('g2')


def test_sl_basis_coordinates():
    sl = SlBasis(3)
    assert sl.labels == ['E12', 'E13', 'E23', 'H1', 'H2', 'E21', 'E31', 'E32']
    coords = sl.coords_of({(1, 1): 2, (2, 2): -1, (3, 3): -1, (1, 3): 5})
    assert coords == {sl.labels.index('E13'): QQ(5), 3: QQ(2), 4: QQ(1)}
    with pytest.raises(ComputationError):
        sl.coords_of({(1, 1): 1})


def test_parse_grading():
    assert parse_grading('trivial', 3) == (1, None)
    assert parse_grading('diag-involution(+,-,+)', 3) == (2, [1, -1, 1])
    with pytest.raises(InputError):
        parse_grading('diag-involution(+,-)', 3)
    with pytest.raises(InputError):
        parse_grading('cyclic', 3)


def test_graded_sl3_satisfies_axioms():
    algebra = build_sl(3, 'diag-involution(+,+,-)')
    assert algebra.degree_dims() == {0: 4, 1: 4}
    assert verify_axioms(algebra).passed


def test_sl2c_real_form(a6):
    assert a6.labels == ['H', 'E', 'F', 'iH', 'iE', 'iF']
    assert a6.degree_dims() == {0: 3, 1: 3}
    ie, i_f = a6.from_terms({'iE': 1}), a6.from_terms({'iF': 1})
    assert ie.bracket(i_f) == a6.from_terms({'H': -1})
    omega = cartan_involution(a6)
    assert automorphism_failure(a6, omega) is None
    assert omega @ omega == ExactMatrix.identity(6, QQ)


def test_chevalley_involution_of_sl3():
    algebra = build_sl(3)
    omega = chevalley_involution(algebra)
    assert automorphism_failure(algebra, omega) is None
    assert omega @ omega == ExactMatrix.identity(algebra.dim, QQ)
    for h in SlBasis(3).cartan_indices:
        assert omega.entry(h, h) == -1


def test_root_functionals_of_sl3():
    spaces = root_functionals(build_sl(3))
    assert len(spaces) == 7
    assert all(space.dim == 1 for key, space in spaces.items() if any(key))
    assert len(root_datum('sl8')) == 56


def test_complexify_and_theta(sl2_diag):
    complex_algebra, tau_g = complexify(sl2_diag)
    assert complex_algebra.field == QQ_I
    assert tau_g.conjugates and tau_g.is_involution()
    theta = theta_automorphism(sl2_diag)
    matrix = theta.matrix()
    assert matrix.entry(sl2_diag.index_of('E'), sl2_diag.index_of('E')) == QQ_I(-1, 0)
    assert matrix.entry(sl2_diag.index_of('H'), sl2_diag.index_of('H')) == QQ_I(1, 0)
    with pytest.raises(PreconditionError):
        complexify(complex_algebra)


def test_semilinear_composition():
    flip = SemilinearMap(ExactMatrix.from_dok({(0, 1): QQ_I(0, 1), (1, 0): QQ_I(0, -1)}, (2, 2), QQ_I), True)
    assert flip.apply([QQ_I(1, 1), QQ_I(0, 0)]) == (QQ_I(0, 0), QQ_I(-1, -1))
    assert flip.compose(flip).conjugates is False


def test_root_data_of_exceptional_models():
    assert len(root_datum('e7-split-z2')) == 126
    assert len(root_datum('e8-split-z3')) == 240
    assert root_datum('e8-split-z3').is_closed_under_negation()


@pytest.mark.slow
def test_e7_model(e7):
    assert e7.dim == 133
    assert e7.degree_dims() == {0: 63, 1: 70}
    assert e7.extras['exterior_model']['n'] == 8
    assert verify_axioms(e7, threads=4).passed


@pytest.mark.slow
def test_e8_model(e8):
    assert e8.dim == 248
    assert e8.degree_dims() == {0: 80, 1: 84, 2: 84}
    assert verify_axioms(e8, threads=4).passed


def test_root_space_decomposition_of_sl2(sl2):
    h = sl2.from_terms({'H': 1})
    spaces = root_space_decomposition(sl2, Subspace.span(sl2, [h]))
    assert set(spaces) == {(QQ(2),), (QQ(0),), (QQ(-2),)}
    assert spaces[(QQ(2),)] == Subspace.span(sl2, [sl2.from_terms({'E': 1})])
    assert spaces[(QQ(0),)] == Subspace.span(sl2, [h])
    with pytest.raises(PreconditionError):
        root_space_decomposition(sl2, Subspace.span(sl2, [sl2.from_terms({'E': 1}), sl2.from_terms({'F': 1})]))


def test_center_generators_have_their_declared_order():
    for algebra in (build_sl(2), build_sl(4, 'diag-involution(+,+,-,-)'), build_catalog('sl2-z2-diag')):
        center = algebra.center
        assert len(center.generators) == len(center.orders) == 1
        for g, order in zip(center.generators, center.orders):
            assert automorphism_failure(algebra, g) is None
            power = ExactMatrix.identity(algebra.dim, QQ)
            for _ in range(order):
                power = power @ g
            assert power == ExactMatrix.identity(algebra.dim, QQ)
    assert build_sl(3).center.is_trivial()
