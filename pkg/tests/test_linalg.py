"""Exact dense and sparse linear algebra."""

import pytest

from src.errors import ConstructionError, PreconditionError
from src.freepoly import FieldMode
from src.linalg import (
    GramFactorization,
    SparseEchelon,
    max_row_sum,
    nullspace,
    positive_definite,
    rank,
    to_matrix,
)

Q = FieldMode.RATIONAL
QI = FieldMode.GAUSSIAN_RATIONAL


def rows(values, field=Q):
    return [[field.convert(x) for x in row] for row in values]


@pytest.mark.parametrize("matrix, expected", [
    ([[1]], True),
    ([[1, 2], [2, 1]], False),
    ([[2, 1], [1, 2]], True),
    ([[1, 0], [0, 0]], False),
])
def test_positive_definite(matrix, expected):
    assert positive_definite(rows(matrix), Q)[0] is expected


def test_leading_minors_are_exact():
    ok, minors = positive_definite(rows([[2, 1], [1, 2]]), Q)
    assert ok
    assert minors == [2, 3]


def test_positive_definite_needs_hermitian():
    with pytest.raises(PreconditionError):
        positive_definite(rows([[1, 2], [0, 1]]), Q)


def test_gaussian_hermitian_matrix():
    i = QI.imaginary_unit
    m = [[QI.convert(2), i], [-i, QI.convert(2)]]
    assert positive_definite(m, QI)[0]


def test_determinants_over_both_fields():
    assert to_matrix(rows([[0, 1], [1, 0]]), Q).det() == -1
    assert to_matrix(rows([[2, 0, 1], [1, 3, 2], [1, 1, 2]]), Q).det() == 6
    assert not to_matrix(rows([[1, 2], [2, 4]]), Q).det()
    i = QI.imaginary_unit
    assert to_matrix([[QI.one, i], [i, QI.one]], QI).det() == QI.convert(2)


def test_nullspace_has_a_unit_on_each_free_column():
    A = rows([[1, 2, 0, 3], [0, 0, 1, 4]])
    basis = nullspace(A, Q, 4)
    assert basis == [[-2, 1, 0, 0], [-3, 0, -4, 1]]
    for v in basis:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    i = QI.imaginary_unit
    assert nullspace([[QI.one, i]], QI, 2) == [[-i, QI.one]]


def test_nullspace_and_rank():
    A = rows([[1, 1, 0], [0, 0, 1]])
    basis = nullspace(A, Q, 3)
    assert basis == [[-1, 1, 0]]
    assert rank(A, Q, 3) == 2
    assert len(nullspace([], Q, 2)) == 2


def test_max_row_sum_bounds_gaussian_modulus():
    i = QI.imaginary_unit
    M = to_matrix([[QI.convert(1) + i, QI.convert(0)], [QI.convert(-3), QI.convert(1)]], QI)
    assert max_row_sum(M, QI) == 4


def test_sparse_echelon_membership():
    echelon = SparseEchelon(Q)
    assert echelon.add({1: Q.convert(1), 0: Q.convert(1)})
    assert echelon.add({2: Q.convert(1), 1: Q.convert(-1)})
    assert not echelon.add({2: Q.convert(1), 0: Q.convert(1)})
    assert echelon.contains({2: Q.convert(2), 0: Q.convert(2)})
    assert not echelon.contains({0: Q.convert(1)})
    assert len(echelon) == 2


def test_sparse_echelon_reduced_rows():
    echelon = SparseEchelon(Q)
    echelon.add({1: Q.convert(1), 0: Q.convert(1)})
    echelon.add({2: Q.convert(1), 1: Q.convert(1)})
    reduced = dict(echelon.reduced_rows())
    assert reduced[2] == {2: 1, 0: -1}


def test_gram_factorization_solves_and_detects_dependence():
    fact = GramFactorization(Q)
    fact.append([], Q.convert(2))
    fact.append([Q.convert(1)], Q.convert(2))
    assert fact.solve([Q.convert(3), Q.convert(3)]) == [1, 1]
    # a third vector equal to the sum of the first two has a zero Schur complement
    assert fact.schur_complement([Q.convert(3), Q.convert(3)], Q.convert(6)) == 0
    with pytest.raises(ConstructionError):
        fact.append([Q.convert(3), Q.convert(3)], Q.convert(6))
