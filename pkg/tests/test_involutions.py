# -*- coding: utf-8 -*-
import numpy as np
import pytest
from sympy import QQ_I

from core.catalog import (GradingAutomorphism, build_catalog, build_sl, compact_form_conjugation, complexify,
                          theta_automorphism)
from core.exceptions import PreconditionError
from core.involutions import (check_compatibility, compact_direction, degree_reversal_map, improve_compact_form,
                              is_r_compatible, permutation_map, perturbed_conjugation, realify)


@pytest.fixture
def diag_setup(sl2_diag):
    complex_algebra, tau_g = complexify(sl2_diag)
    return sl2_diag, complex_algebra, tau_g, theta_automorphism(sl2_diag)


def test_real_form_is_compatible(diag_setup):
    _, complex_algebra, tau_g, theta = diag_setup
    report = check_compatibility(complex_algebra, tau_g, theta)
    assert report.comp_holds and report.comp2_holds and report.grad_holds
    assert report.witness is None


def test_grading_breaking_map_is_rejected(diag_setup):
    algebra, complex_algebra, _, theta = diag_setup
    h, e = algebra.index_of('H'), algebra.index_of('E')
    permutation = list(range(algebra.dim))
    permutation[h], permutation[e] = e, h
    broken = permutation_map(algebra.dim, permutation, conjugates=True)
    report = check_compatibility(complex_algebra, broken, theta)
    assert not report.comp_holds
    assert not report.grad_holds
    assert report.witness in ('H', 'E')


def test_compact_form_is_r_compatible(diag_setup):
    _, complex_algebra, _, theta = diag_setup
    tau_u = compact_form_conjugation(complex_algebra)
    check = is_r_compatible(complex_algebra, tau_u, theta)
    assert check.holds
    assert check.block_map == {0: 0, 1: 1}


def test_linear_map_is_not_of_compact_type(diag_setup):
    algebra, complex_algebra, _, theta = diag_setup
    identity = permutation_map(algebra.dim, list(range(algebra.dim)), conjugates=False)
    check = is_r_compatible(complex_algebra, identity, theta)
    assert not check.holds
    assert check.reason == "not an involution of compact type"


def test_degree_reversal_on_real_form(diag_setup):
    algebra, complex_algebra, _, theta = diag_setup
    tau_u = compact_form_conjugation(complex_algebra)
    e = algebra.from_terms({'E': 1})
    image = degree_reversal_map(tau_u, e, theta)
    assert image == algebra.from_terms({'F': -1})
    assert image.degree() == 1


def test_realify_conjugation_block():
    matrix = realify(np.array([[1j]]), conjugates=True)
    assert np.allclose(matrix, [[0, 1], [1, 0]])


def test_improvement_of_exact_compact_form_is_trivial(diag_setup):
    _, complex_algebra, tau_g, theta = diag_setup
    tau_u = compact_form_conjugation(complex_algebra)
    result = improve_compact_form(complex_algebra, tau_g, tau_u, theta)
    assert result.trivial
    assert max(result.residuals.values()) < 1e-9


def test_compact_direction_lies_in_compact_degree_zero(sl2):
    complex_algebra, _ = complexify(sl2)
    direction = compact_direction(sl2, complex_algebra)
    i = QQ_I(0, 1)
    assert direction == complex_algebra.from_terms({'E': 1, 'F': -1}).scale(i) or \
        direction == complex_algebra.from_terms({'E': -1, 'F': 1}).scale(i)


def test_real_grading_without_compact_degree_zero(diag_setup):
    algebra, complex_algebra, _, _ = diag_setup
    with pytest.raises(PreconditionError):
        compact_direction(algebra, complex_algebra)


@pytest.mark.parametrize('name', ['sl2', 'sl2c-real-z2'])
def test_improvement_repairs_perturbed_form(name):
    algebra = build_catalog(name)
    complex_algebra, tau_g = complexify(algebra)
    theta = theta_automorphism(algebra)
    tau_u = compact_form_conjugation(complex_algebra)
    direction = compact_direction(algebra, complex_algebra)
    perturbed = perturbed_conjugation(complex_algebra, tau_u, direction, 0.25)
    result = improve_compact_form(complex_algebra, tau_g, perturbed, theta)
    assert not result.trivial
    assert result.residuals['tau_g'] < 1e-9
    assert result.residuals['theta'] < 1e-9
    doc = result.to_dict()
    assert len(doc['phi_spectrum']) == 2 * algebra.dim
    assert doc['phi_is_identity'] is False


def test_real_perturbation_leaves_nothing_to_improve(diag_setup):
    algebra, complex_algebra, tau_g, theta = diag_setup
    tau_u = compact_form_conjugation(complex_algebra)
    h = complex_algebra.basis_element(algebra.index_of('H'))
    perturbed = perturbed_conjugation(complex_algebra, tau_u, h, 0.25)
    result = improve_compact_form(complex_algebra, tau_g, perturbed, theta)
    assert result.trivial


def test_improvement_requires_theta_commuting_input(diag_setup):
    algebra, complex_algebra, tau_g, theta = diag_setup
    tau_u = compact_form_conjugation(complex_algebra)
    e = complex_algebra.basis_element(algebra.index_of('E'))
    moved = perturbed_conjugation(complex_algebra, tau_u, e, 0.5)
    with pytest.raises(PreconditionError):
        improve_compact_form(complex_algebra, tau_g, moved, theta)


def _degree_preserving(rng, degrees):
    permutation = list(range(len(degrees)))
    for d in set(degrees):
        block = [j for j, k in enumerate(degrees) if k == d]
        for j, target in zip(block, rng.permutation(block)):
            permutation[j] = int(target)
    return permutation


def test_both_compatibility_relations_agree_on_random_maps(sl2_diag, a6):
    rng = np.random.default_rng(23)
    algebras = [complexify(sl2_diag)[0], complexify(a6)[0],
                complexify(build_sl(4, 'diag-involution(+,+,-,-)'))[0]]
    agreed = set()
    for trial in range(50):
        algebra = algebras[trial % len(algebras)]
        if trial % 5 == 4:
            theta = GradingAutomorphism(tuple(int(d) for d in rng.integers(4, size=algebra.dim)), 4)
        else:
            theta = GradingAutomorphism(tuple(algebra.degrees), algebra.modulus)
        theta = theta.power(int(rng.integers(1, theta.modulus)) if theta.modulus > 2 else 1)
        if rng.integers(2):
            permutation = _degree_preserving(rng, theta.degrees)
        else:
            permutation = [int(j) for j in rng.permutation(algebra.dim)]
        tau = permutation_map(algebra.dim, permutation, conjugates=bool(rng.integers(2)))
        report = check_compatibility(algebra, tau, theta)
        forward = theta.as_semilinear()
        backward = theta.inverse().as_semilinear()
        assert report.comp_holds == (tau.compose(forward) == backward.compose(tau))
        assert report.comp2_holds == (forward.compose(tau).compose(forward) == tau)
        assert report.comp_holds == report.comp2_holds
        agreed.add(report.comp_holds)
    assert agreed == {True, False}
