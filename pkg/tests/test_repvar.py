"""Evaluation at matrix tuples, zero classes, vanishing ideals and commutants."""

from fractions import Fraction

import pytest

from src.catalog import PointDetectorProblem
from src.errors import PreconditionError
from src.freepoly import FieldMode, word_key
from src.generators import PolynomialGenerator
from src.groebner import IdealPresentation, complete
from src.linalg import SparseEchelon, is_zero
from src.repvar import (
    CommutantLabel,
    MatrixTuple,
    ZeroClass,
    commutant_type,
    determinant,
    evaluate_at,
    generated_algebra_dim,
    hard_variety,
    left_vanishing_ideal,
    soft_condition_check,
    soft_equals_hard,
    star_compatible,
    trace_value,
    vanishing_ideal,
    zero_class,
)

Q = FieldMode.RATIONAL


def in_span(p, basis):
    echelon = SparseEchelon(Q, key=word_key)
    for b in basis:
        echelon.add(dict(b.terms))
    return echelon.contains(dict(p.terms))


def test_evaluate_examples(poly, jordan):
    assert evaluate_at(poly("x1'*x1 - 1", 1), jordan).to_list() == [[-1, 0], [0, 0]]
    assert evaluate_at(poly("1", 1), jordan).to_list() == [[1, 0], [0, 1]]


def test_shifted_commutator_has_trace_n(poly):
    gen = PolynomialGenerator(seed=9, g=2)
    p = poly("x1*x2 - x2*x1 + 1")
    for n in (1, 2, 3):
        assert trace_value(p, gen.random_tuple(n)) == n


def test_evaluation_respects_the_involution(poly):
    gen = PolynomialGenerator(seed=4, g=2)
    for _ in range(5):
        X = gen.random_tuple(2)
        assert star_compatible(poly("x1*x2' + 3*x2 - x1'*x1*x2"), X)


def test_tuple_must_match_polynomial(poly, jordan):
    with pytest.raises(PreconditionError):
        evaluate_at(poly("x1*x2"), jordan)
    with pytest.raises(PreconditionError):
        MatrixTuple.from_rows([[[1, 0], [0]]])


def test_zero_classes(poly, jordan):
    assert zero_class(poly("x1", 1), jordan) is ZeroClass.SOFT_ONLY
    assert zero_class(poly("x1'*x1 - 1", 1), MatrixTuple.from_rows([[[1, 0], [0, 1]]])) is ZeroClass.HARD
    assert zero_class(poly("x1 + 1", 1), jordan) is ZeroClass.NONZERO
    assert determinant(poly("x1 + 1", 1), jordan) == 1


def test_soft_zeros_survive_multiplication(poly, jordan):
    gen = PolynomialGenerator(seed=61, g=1)
    singular = [poly("x1", 1), poly("x1*x1'", 1)]
    for _ in range(20):
        a = gen.random_polynomial(2)
        b = gen.random_polynomial(2)
        p = gen.random_polynomial(2)
        product = determinant(a, jordan) * determinant(p, jordan) * determinant(b, jordan)
        assert determinant(a * p * b, jordan) == product
        for s in singular:
            assert zero_class(s, jordan) is not ZeroClass.NONZERO
            assert zero_class(a * s * b, jordan) is not ZeroClass.NONZERO


def test_hard_zeros_of_generators_kill_the_truncated_basis(poly):
    # adjacent transpositions satisfy the braid relation, and so does any pair (A, A)
    s1 = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    s2 = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    gen = PolynomialGenerator(seed=62, g=2)
    A = gen.random_tuple(2).rows()[0]
    points = [MatrixTuple.from_rows([s1, s2]), MatrixTuple.from_rows([A, A])]
    braid = [poly("x2*x1*x2 - x1*x2*x1")]
    gb = complete(IdealPresentation.from_generators(braid), 5)
    assert not gb.complete
    for X in points:
        assert all(is_zero(evaluate_at(p, X)) for p in braid)
        for rule in gb.rules:
            assert is_zero(evaluate_at(rule, X))
        for _ in range(10):
            assert is_zero(evaluate_at(gen.ideal_element(braid, 5), X))


def test_point_detector_is_hard_zero_at_its_point():
    problem = PointDetectorProblem()
    p = problem.polynomials()[0]
    X = problem.problem_file().matrices["point"]
    assert zero_class(p, X) is ZeroClass.HARD
    assert zero_class(p, MatrixTuple.scalars([1, 3])) is ZeroClass.NONZERO


def test_hard_variety(poly):
    candidates = [MatrixTuple.scalars([v]) for v in (0, 1, 2)]
    found = hard_variety([poly("x1*x1 - x1", 1)], candidates)
    assert [X.rows() for X in found] == [[[[0]]], [[[1]]]]


def test_vanishing_ideal_of_points(poly):
    assert set(vanishing_ideal([MatrixTuple.scalars([0])], 1)) == {poly("x1", 1), poly("x1'", 1)}
    assert set(vanishing_ideal([MatrixTuple.scalars([1])], 1)) == {poly("x1 - 1", 1), poly("x1' - 1", 1)}


def test_vanishing_ideal_of_jordan_block(poly, jordan):
    basis = vanishing_ideal([jordan], 2)
    assert in_span(poly("x1*x1", 1), basis)
    assert in_span(poly("x1'*x1'", 1), basis)
    assert not in_span(poly("x1*x1' - x1'*x1", 1), basis)
    for b in basis:
        assert zero_class(b, jordan) is ZeroClass.HARD


def test_vanishing_ideal_needs_tuples():
    with pytest.raises(PreconditionError):
        vanishing_ideal([], 2)


def test_left_vanishing_ideal(poly, jordan):
    basis = left_vanishing_ideal(jordan, [1, 0], 1)
    assert in_span(poly("x1", 1), basis)
    assert not in_span(poly("x1'", 1), basis)

    origin = left_vanishing_ideal(MatrixTuple.scalars([0, 0]), [1], 1)
    assert set(origin) == {poly("x1"), poly("x2"), poly("x1'"), poly("x2'")}

    left = left_vanishing_ideal(jordan, [1, 0], 3)
    for p in vanishing_ideal([jordan], 3):
        assert in_span(p, left)

    with pytest.raises(PreconditionError):
        left_vanishing_ideal(jordan, [0, 0], 1)
    with pytest.raises(PreconditionError):
        left_vanishing_ideal(jordan, [1], 1)


def test_commutant_types(jordan, diag, rotation):
    ctype = commutant_type(jordan)
    assert (ctype.commutant_dim, ctype.label, ctype.algebra_dim) == (1, CommutantLabel.FULL_REAL, 4)
    assert commutant_type(diag).label is CommutantLabel.REDUCIBLE
    ctype = commutant_type(rotation)
    assert (ctype.commutant_dim, ctype.label) == (2, CommutantLabel.COMPLEX_TYPE)


def test_quaternion_type():
    # left multiplication by i and j on H = R^4
    i = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    j = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
    X = MatrixTuple.from_rows([i, j])
    ctype = commutant_type(X)
    assert (ctype.commutant_dim, ctype.label) == (4, CommutantLabel.QUATERNION_TYPE)
    assert soft_equals_hard(X)


def test_gaussian_commutant():
    QI = FieldMode.GAUSSIAN_RATIONAL
    X = MatrixTuple.from_rows([[[0, 1], [0, 0]]], QI)
    assert commutant_type(X).label is CommutantLabel.FULL_COMPLEX


def test_generated_algebra_dim(jordan, diag):
    assert generated_algebra_dim(jordan) == 4
    assert generated_algebra_dim(diag) == 2


def test_soft_equals_hard(jordan, diag, rotation):
    assert soft_equals_hard(MatrixTuple.scalars([Fraction(3, 2)]))
    assert not soft_equals_hard(jordan)
    assert soft_equals_hard(rotation)
    with pytest.raises(PreconditionError):
        soft_equals_hard(diag)


def test_soft_condition_check(poly, jordan):
    report = soft_condition_check(poly("x1", 1), [jordan])
    assert report.soft_zero_count == 1
    assert not report.division_condition
    assert not report.passed

    problem = PointDetectorProblem()
    point = problem.problem_file().matrices["point"]
    report = soft_condition_check(problem.polynomials()[0], [point])
    assert report.passed
    assert report.soft_zero_count == 1

    vacuous = soft_condition_check(poly("x1 - 5", 1), [MatrixTuple.scalars([1])])
    assert vacuous.passed
    assert vacuous.soft_zero_count == 0
