# -*- coding: utf-8 -*-
import pytest
from sympy import Poly, QQ, QQ_I

from core.exceptions import InputError, PreconditionError
from core.linalg import (T, ExactMatrix, definiteness, kernel_basis, matrix_jordan_chevalley, matrix_rank,
                         minimal_polynomial, nilpotency_index, nilpotent_exp, rank_kernel_solve, row_reduce,
                         solve)


def rows(*entries):
    return ExactMatrix.from_rows([[QQ(v) for v in row] for row in entries], QQ)


def test_rank_and_kernel():
    m = rows([1, 2, 3], [2, 4, 6])
    assert matrix_rank(m) == 1
    kernel = kernel_basis(m)
    assert len(kernel) == 2
    for v in kernel:
        assert not any(m.apply(v))


def test_solve_particular_and_inconsistent():
    m = rows([1, 1], [0, 1])
    assert solve(m, [QQ(3), QQ(1)]) == (QQ(2), QQ(1))
    singular = rows([1, 1], [1, 1])
    assert solve(singular, [QQ(1), QQ(2)]) is None
    result = rank_kernel_solve(singular, [QQ(2), QQ(2)])
    assert result.consistent and result.solution == (QQ(2), QQ(0))


def test_rhs_shape_is_checked():
    with pytest.raises(InputError):
        solve(rows([1, 0], [0, 1]), [QQ(1)])


def test_row_reduce_is_canonical():
    a = row_reduce([(QQ(2), QQ(4)), (QQ(1), QQ(3))], 2, QQ)
    b = row_reduce([(QQ(0), QQ(1)), (QQ(1), QQ(0))], 2, QQ)
    assert a == b


def test_minimal_polynomial_of_jordan_block():
    block = rows([2, 1, 0], [0, 2, 0], [0, 0, 2])
    assert minimal_polynomial(block) == Poly((T - 2) ** 2, T, domain=QQ)
    assert minimal_polynomial(ExactMatrix.identity(3, QQ)) == Poly(T - 1, T, domain=QQ)


def test_minimal_polynomial_over_gaussian_rationals():
    rotation = ExactMatrix.from_rows([[QQ_I(0, 0), QQ_I(-1, 0)], [QQ_I(1, 0), QQ_I(0, 0)]], QQ_I)
    assert minimal_polynomial(rotation).degree() == 2


def test_matrix_jordan_chevalley_parts_commute():
    m = rows([3, 1, 0], [0, 3, 0], [0, 0, 5])
    parts = matrix_jordan_chevalley(m)
    assert parts.semisimple + parts.nilpotent == m
    assert parts.semisimple @ parts.nilpotent == parts.nilpotent @ parts.semisimple
    assert nilpotency_index(parts.nilpotent) == 2
    assert parts.semisimple == rows([3, 0, 0], [0, 3, 0], [0, 0, 5])


def test_nilpotent_exp_and_index():
    n = rows([0, 1, 0], [0, 0, 1], [0, 0, 0])
    assert nilpotency_index(n) == 3
    assert nilpotent_exp(n) == rows([1, 1, QQ(1, 2)], [0, 1, 1], [0, 0, 1])
    with pytest.raises(PreconditionError, match="exp requires nilpotent argument"):
        nilpotent_exp(rows([1, 0], [0, 0]))
    assert nilpotency_index(rows([1, 0], [0, 0])) is None


def test_definiteness_by_symmetric_pivots():
    assert definiteness([[2, 1], [1, 2]]) == 'positive'
    assert definiteness([[-2, 0], [0, -1]]) == 'negative'
    assert definiteness([[1, 0], [0, -1]]) == 'indefinite-or-degenerate'
    assert definiteness([[0, 1], [1, 0]]) == 'indefinite-or-degenerate'
