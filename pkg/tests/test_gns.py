"""Matrix witnesses for homogeneous analytic *-ideals."""

from fractions import Fraction

import numpy as np
import pytest

from src.catalog import get_problem
from src.errors import DegreeBoundError, PreconditionError
from src.functional import ALTERNATE_POLICY
from src.generators import PolynomialGenerator
from src.gns import (
    bounded_family,
    build_witness,
    certified_norm_bound,
    evaluate_witness,
    gram_adjoint_holds,
    orthonormal_export,
    scaled,
    truncate_ideal,
    unit_vector,
    verify_witness,
)
from src.groebner import IdealPresentation
from src.linalg import is_zero


@pytest.fixture(scope="module")
def commutator_witness():
    return build_witness(get_problem("commutator").ideal(), 1)


def test_truncate_ideal_examples(poly, commutator_ideal):
    truncated = truncate_ideal(commutator_ideal, 1)
    expected = {poly("x1*x2 - x2*x1"), poly("x2'*x1' - x1'*x2'")}
    for text in ("x1*x1", "x1*x2", "x2*x1", "x2*x2"):
        expected |= {poly(text), poly(text).star()}
    assert set(truncated.generators) == expected
    assert truncated.star_closed

    point = truncate_ideal(IdealPresentation.from_generators([poly("x1")]), 0)
    assert point.generators == (poly("x1"), poly("x1'"), poly("x2"), poly("x2'"))

    empty = truncate_ideal(IdealPresentation.from_generators([], g=1), 1)
    assert set(empty.generators) == {poly("x1*x1", 1), poly("x1'*x1'", 1)}


def test_commutator_witness_commutes(poly, commutator_witness):
    w = commutator_witness
    assert is_zero(evaluate_witness(poly("x1*x2 - x2*x1"), w))
    assert not is_zero(w.xop[0])
    assert not is_zero(w.xop[1])
    assert gram_adjoint_holds(w)


def test_unit_vector_is_first_basis_class(commutator_witness):
    e1 = unit_vector(commutator_witness)
    assert commutator_witness.basis[0] == 1
    assert e1[0] == 1
    assert not any(e1[1:])


def test_verify_witness_probes(poly, commutator_ideal, commutator_witness):
    report = verify_witness(commutator_witness, commutator_ideal, [poly("x1"), poly("x2"), poly("x1 - 2*x2'")])
    assert report.passed, report.failures
    assert all(entry["separates"] for entry in report.probes)
    with pytest.raises(DegreeBoundError):
        verify_witness(commutator_witness, commutator_ideal, [poly("x1*x1")])


def test_generator_of_degree_one_vanishes(poly):
    I = IdealPresentation.from_generators([poly("x1")])
    w = build_witness(I, 1)
    assert is_zero(w.xop[0])
    assert not is_zero(w.xop[1])
    report = verify_witness(w, I, [poly("x1"), poly("x2")])
    assert report.passed, report.failures
    assert report.probes[0]["verdict"] == "member" and report.probes[0]["vanishes"]


def test_zero_ideal_separates_every_probe(poly):
    I = IdealPresentation.from_generators([], g=1)
    w = build_witness(I, 1)
    probes = [poly("1", 1), poly("x1", 1), poly("x1'", 1), poly("x1 + x1' - 3", 1)]
    report = verify_witness(w, I, probes)
    assert report.passed, report.failures
    assert all(entry["verdict"] == "non_member" for entry in report.probes)


def test_witness_is_reproducible(commutator_ideal, commutator_witness):
    again = build_witness(commutator_ideal, 1)
    assert again.basis == commutator_witness.basis
    assert again.gram == commutator_witness.gram
    assert again.xop == commutator_witness.xop


def test_witness_kernel_does_not_depend_on_constants(poly, commutator_ideal, commutator_witness):
    other = build_witness(commutator_ideal, 1, policy=ALTERNATE_POLICY)
    assert other.dim == commutator_witness.dim
    assert other.basis == commutator_witness.basis
    for text in ("x1*x2 - x2*x1", "x1", "x2'"):
        p = poly(text)
        assert is_zero(evaluate_witness(p, other)) == is_zero(evaluate_witness(p, commutator_witness))


def test_bounded_family(poly, commutator_ideal):
    family = bounded_family(commutator_ideal, 1)
    assert len(family) == 1
    w, lam = family[0]
    assert 0 < lam <= 1
    assert certified_norm_bound(w) <= 1
    assert is_zero(evaluate_witness(poly("x1*x2 - x2*x1"), w))
    assert not is_zero(evaluate_witness(poly("x1"), w))


def test_scaling_is_homogeneous(poly, commutator_witness):
    lam = Fraction(1, 3)
    small = scaled(commutator_witness, lam)
    p = poly("x1*x2' + 2*x2*x2")
    expected = evaluate_witness(p, commutator_witness) * small.field.convert(lam ** 2)
    assert evaluate_witness(p, small) == expected


def test_witness_preconditions(poly, toeplitz_ideal, commutator_ideal):
    with pytest.raises(PreconditionError):
        build_witness(toeplitz_ideal, 1)
    with pytest.raises(PreconditionError):
        build_witness(commutator_ideal, 0)
    mixed = IdealPresentation.from_generators([poly("x1'*x2")])
    with pytest.raises(PreconditionError):
        build_witness(mixed, 1)
    with pytest.raises(PreconditionError):
        truncate_ideal(commutator_ideal, -1)


def test_orthonormal_export(commutator_witness):
    A1, A2 = orthonormal_export(commutator_witness)
    n = commutator_witness.dim
    assert A1.shape == (n, n)
    assert np.allclose(A1 @ A2, A2 @ A1)
    assert not np.allclose(A1, 0)


def test_witness_evaluation_respects_products(commutator_witness):
    gen = PolynomialGenerator(seed=41, g=2)
    for _ in range(20):
        p = gen.random_polynomial(2)
        q = gen.random_polynomial(2)
        lhs = evaluate_witness(p * q, commutator_witness)
        rhs = evaluate_witness(p, commutator_witness) * evaluate_witness(q, commutator_witness)
        assert lhs.to_list() == rhs.to_list()
        total = evaluate_witness(p + q, commutator_witness)
        parts = evaluate_witness(p, commutator_witness) + evaluate_witness(q, commutator_witness)
        assert total.to_list() == parts.to_list()


@pytest.fixture(scope="module")
def commutator_witness_degree_two():
    return build_witness(get_problem("commutator").ideal(), 2)


def test_commutator_witness_at_degree_two(poly, commutator_ideal, commutator_witness_degree_two):
    w = commutator_witness_degree_two
    # 1, x1, x2 and the three commuting quadratics are independent classes
    assert w.dim >= 6
    assert gram_adjoint_holds(w)
    samples = [poly("x1*x2 - x2*x1"), poly("x1*x2"), poly("x2*x2 - x1"), poly("x1 - 2*x2'")]
    report = verify_witness(w, commutator_ideal, samples)
    assert report.passed, report.failures
    assert report.probes[0]["vanishes"]
    assert all(entry["separates"] for entry in report.probes[1:])


@pytest.mark.slow
def test_bounded_family_at_degree_two(poly, commutator_ideal):
    family = bounded_family(commutator_ideal, 2)
    assert [w.d for w, _ in family] == [1, 2]
    for w, lam in family:
        assert 0 < lam <= 1
        assert certified_norm_bound(w) <= 1
        assert is_zero(evaluate_witness(poly("x1*x2 - x2*x1"), w))
        assert not is_zero(evaluate_witness(poly("x1*x2"), w))
