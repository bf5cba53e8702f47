"""Positive functionals vanishing on *-ideals, and their certificates."""

from fractions import Fraction

import pytest

from src.errors import ConstructionError, DegreeBoundError, ImproperIdealError, PreconditionError
from src.functional import (
    ALTERNATE_POLICY,
    DEFAULT_POLICY,
    ConstantPolicy,
    MomentMatrix,
    build_functional,
    diagonal_words,
    evaluate_functional,
    evaluate_word,
    is_positive_definite,
    moment_matrix,
    moment_matrix_of_polys,
    verify_functional,
)
from src.freepoly import FieldMode
from src.generators import PolynomialGenerator
from src.groebner import IdealPresentation, complete, reduce, standard_monomials

QI = FieldMode.GAUSSIAN_RATIONAL


@pytest.fixture
def commutator_functional(commutator_gb):
    return build_functional(commutator_gb, 2)


def test_point_ideal_functional(poly):
    gb = complete(IdealPresentation.from_generators([poly("x1", 1)]), 2)
    L = build_functional(gb, 1)
    assert standard_monomials(gb, 1) == [()]
    assert L.constants()[0] == 1
    assert evaluate_word(L, ()) == 1
    assert evaluate_functional(L, poly("x1'*x1 + 2", 1)) == 2


def test_functional_vanishes_on_generators(poly, commutator_gb, commutator_functional):
    L = commutator_functional
    assert evaluate_functional(L, poly("x1*x2 - x2*x1")) == 0
    assert evaluate_functional(L, poly("x2'*x1'*x1 - x1'*x2'*x1")) == 0
    assert evaluate_word(L, ()) == L.c[0]
    assert evaluate_word(L, (0,)) == 0
    assert evaluate_word(L, (2, 0)) == L.c[1]


def test_constants_are_positive(commutator_functional):
    assert len(commutator_functional.constants()) == 3
    assert all(c > 0 for c in commutator_functional.constants())


def test_commutator_certificate(commutator_functional):
    report = verify_functional(commutator_functional, 2)
    assert report.passed, report.failures
    assert report.hermitian and report.vanishes_on_ideal and report.positive_definite
    assert all(m > 0 for m in report.minors)


def test_toeplitz_certificate(toeplitz_ideal):
    gb = complete(toeplitz_ideal, 4)
    assert gb.complete and not gb.homogeneous
    L = build_functional(gb, 2)
    report = verify_functional(L, 2)
    assert report.passed, report.failures


def test_corrupted_constant_fails_positivity(commutator_functional):
    c = commutator_functional.constants()
    broken = commutator_functional.with_constants([c[0], Fraction(0), c[2]])
    report = verify_functional(broken, 2)
    assert not report.positive_definite
    assert not report.passed


def test_moment_matrix_examples(commutator_functional):
    L = commutator_functional
    M = moment_matrix(L, [()])
    assert M.rows() == [[L.c[0]]]
    words = standard_monomials(L.gb, 1)
    M = moment_matrix(L, words)
    assert len(M.labels) == 5
    assert is_positive_definite(M)
    with pytest.raises(PreconditionError):
        moment_matrix(L, [(1, 0)])
    with pytest.raises(DegreeBoundError):
        moment_matrix(L, [(0, 0, 0)])


def test_moment_matrix_of_polys_is_hermitian(poly, commutator_functional):
    M = moment_matrix_of_polys(commutator_functional, [poly("1"), poly("x1 + x2'"), poly("x1*x2")])
    rows = M.rows()
    assert all(rows[i][j] == rows[j][i] for i in range(3) for j in range(3))


@pytest.mark.parametrize("matrix, expected", [
    ([[1]], True),
    ([[1, 2], [2, 1]], False),
    ([[2, 1], [1, 2]], True),
])
def test_is_positive_definite(matrix, expected):
    assert is_positive_definite(MomentMatrix.from_rows(matrix)) is expected


def test_random_ideal_elements_are_annihilated(commutator_ideal, commutator_functional):
    gen = PolynomialGenerator(seed=3, g=2)
    for _ in range(20):
        p = gen.ideal_element(list(commutator_ideal.generators), 4)
        assert evaluate_functional(commutator_functional, p) == 0


def test_functional_is_reproducible(commutator_gb, commutator_functional):
    again = build_functional(commutator_gb, 2)
    assert again.constants() == commutator_functional.constants()


def test_alternate_policy_on_homogeneous_ideal(commutator_gb):
    L = build_functional(commutator_gb, 2, policy=ALTERNATE_POLICY)
    assert L.constants()[0] == 4
    assert verify_functional(L, 2).passed


def test_search_exhaustion(toeplitz_ideal):
    # equal c_0 and c_1 leave the degree-2 Schur complement singular whatever c_2 is
    gb = complete(toeplitz_ideal, 4)
    tight = ConstantPolicy(initial=Fraction(4), ratio=Fraction(1), max_doublings=1)
    with pytest.raises(ConstructionError):
        build_functional(gb, 2, policy=tight)


def test_preconditions(poly, commutator_functional):
    improper = complete(IdealPresentation.from_generators([poly("x1 - 1", 1), poly("x1", 1)]), 2)
    with pytest.raises(ImproperIdealError):
        build_functional(improper, 1)
    truncated = complete(IdealPresentation.from_generators([poly("x2*x1*x2 - x1*x2*x1")]), 3)
    with pytest.raises(PreconditionError):
        build_functional(truncated, 2)
    with pytest.raises(DegreeBoundError):
        evaluate_word(commutator_functional, (0,) * 5)
    with pytest.raises(DegreeBoundError):
        verify_functional(commutator_functional, 3)


def test_reduced_squares_carry_their_constant(commutator_gb, commutator_functional):
    # x2'x1'x1x2 reduces to x1'x2'x1x2, which takes over c_2
    diagonal = diagonal_words(commutator_gb, standard_monomials(commutator_gb, 2))
    assert diagonal[(2, 3, 0, 1)] == (2, 1)
    assert (3, 2, 0, 1) not in diagonal
    assert diagonal[(2, 2, 0, 0)] == (2, 1)
    assert diagonal[(3, 1)] == (1, 1)
    assert (3, 0) not in diagonal
    L = commutator_functional
    assert evaluate_word(L, (2, 3, 0, 1)) == L.c[2]
    assert evaluate_word(L, (3, 2, 0, 1)) == L.c[2]
    assert evaluate_word(L, (2, 3, 1, 0)) == L.c[2]


def test_commutator_certificate_at_degree_three(commutator_gb):
    L = build_functional(commutator_gb, 3)
    assert len(L.constants()) == 4
    assert all(c > 0 for c in L.constants())
    report = verify_functional(L, 3)
    assert report.passed, report.failures


def test_constants_are_first_passing_doublings(commutator_gb):
    L = build_functional(commutator_gb, 3)
    c = L.constants()
    for d in range(4):
        start = DEFAULT_POLICY.initial if d == 0 else c[d - 1] * DEFAULT_POLICY.ratio
        steps = c[d] / start
        assert steps.denominator == 1 and steps.numerator & (steps.numerator - 1) == 0
        if c[d] > start:
            lowered = L.with_constants(c[:d] + [c[d] / 2] + c[d + 1:])
            assert not verify_functional(lowered, d).positive_definite


def test_kernel_is_the_ideal(commutator_ideal, commutator_gb, commutator_functional):
    L = commutator_functional
    gen = PolynomialGenerator(seed=31, g=2)
    generators = list(commutator_ideal.generators)
    for k in range(50):
        a = gen.ideal_element(generators, 2)
        if k % 2 or a.is_zero():
            a = a + gen.random_polynomial(2, terms=2)
        value = evaluate_functional(L, a.star() * a)
        if reduce(a, commutator_gb).is_zero():
            assert value == 0
        else:
            assert value > 0


def test_hermitian_symmetry_on_random_polynomials(poly, commutator_functional):
    gen = PolynomialGenerator(seed=32, g=2)
    for _ in range(30):
        p = gen.random_polynomial(4, terms=4)
        assert evaluate_functional(commutator_functional, p.star()) == evaluate_functional(commutator_functional, p)

    gb = complete(IdealPresentation.from_generators([poly("x1*x2 - x2*x1", 2, QI)], 2, QI), 4)
    L = build_functional(gb, 2)
    gen = PolynomialGenerator(seed=33, g=2, field=QI)
    for _ in range(30):
        p = gen.random_polynomial(4, terms=4)
        assert evaluate_functional(L, p.star()) == QI.conjugate(evaluate_functional(L, p))


def test_off_diagonal_entries_ignore_the_top_constant(commutator_functional):
    L = commutator_functional
    c = L.constants()
    other = L.with_constants(c[:2] + [c[2] * 7])
    words = standard_monomials(L.gb, 2)
    before = moment_matrix(L, words).rows()
    after = moment_matrix(other, words).rows()
    for i in range(len(words)):
        for j in range(len(words)):
            if i != j:
                assert before[i][j] == after[i][j]
    assert any(before[i][i] != after[i][i] for i in range(len(words)))


def test_certificate_holds_at_every_lower_degree(commutator_gb):
    L = build_functional(commutator_gb, 3)
    for d in range(4):
        assert verify_functional(L, d).passed
    c = L.constants()
    assert verify_functional(L.with_constants(c[:3] + [c[3] * 5]), 3).positive_definite
