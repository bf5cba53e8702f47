"""Named problems, their JSON files and the seeded input generators."""

import json

import pytest

from src.catalog import PointDetectorProblem, get_all_problems, get_problem, write_problem_files
from src.errors import PreconditionError
from src.freepoly import FieldMode, is_analytic_word
from src.generators import GENERATOR_TEMPLATES, PolynomialGenerator, is_orthogonal
from src.repvar import MatrixTuple, ZeroClass, zero_class

from .conftest import PROBLEMS


@pytest.mark.parametrize("problem", get_all_problems(), ids=lambda p: p.name)
def test_problem_files_match_catalog(problem):
    with open(PROBLEMS / f"{problem.name}.json") as f:
        assert json.load(f) == problem.to_dict()


@pytest.mark.parametrize("problem", get_all_problems(), ids=lambda p: p.name)
def test_every_problem_loads(problem):
    loaded = problem.problem_file()
    assert loaded.g == problem.g
    assert loaded.generators == problem.polynomials()
    assert set(loaded.matrices) == set(problem.matrices)


def test_names_are_unique():
    names = [p.name for p in get_all_problems()]
    assert len(names) == len(set(names))


def test_unknown_problem():
    with pytest.raises(PreconditionError, match="commutator"):
        get_problem("heisenberg")


def test_write_problem_files(tmp_path):
    written = write_problem_files(tmp_path / "out")
    assert len(written) == len(get_all_problems())
    assert sorted(p.name for p in written) == sorted(p.name for p in PROBLEMS.glob("*.json"))


def test_point_detector_vanishes_only_at_its_point():
    problem = PointDetectorProblem()
    p = problem.polynomials()[0]
    assert zero_class(p, problem.problem_file().matrices["point"]) is ZeroClass.HARD
    assert zero_class(p, MatrixTuple.scalars([1, 1])) is ZeroClass.NONZERO


def test_generator_is_reproducible():
    a = PolynomialGenerator(seed=3).generator_sets(5)
    b = PolynomialGenerator(seed=3).generator_sets(5)
    c = PolynomialGenerator(seed=4).generator_sets(5)
    assert a == b
    assert a != c


def test_generator_sets_are_analytic_and_homogeneous():
    for gens in PolynomialGenerator(seed=11).generator_sets(20):
        assert 1 <= len(gens) <= 2
        for p in gens:
            assert p.is_homogeneous()
            assert all(is_analytic_word(w, 2) for w in p.terms)


def test_ideal_element_degree():
    gen = PolynomialGenerator(seed=5)
    gens = gen.generator_sets(1)[0]
    for _ in range(10):
        assert gen.ideal_element(gens, 4).degree() <= 4


def test_random_polynomial_is_nonzero():
    gen = PolynomialGenerator(seed=9, g=1, field=FieldMode.GAUSSIAN_RATIONAL)
    for _ in range(20):
        p = gen.random_polynomial(3, homogeneous_degree=2)
        assert not p.is_zero()
        assert p.is_homogeneous() and p.degree() == 2


def test_orthogonal_tuples():
    tuples = PolynomialGenerator(seed=1).orthogonal_tuples(6)
    assert len(tuples) == 6
    assert all(is_orthogonal(X) for X in tuples)
    assert not is_orthogonal(MatrixTuple.from_rows([[[1, 1], [0, 1]], [[1, 0], [0, 1]]]))


def test_random_tuple_shape():
    X = PolynomialGenerator(seed=2, g=2).random_tuple(3)
    assert X.g == 2 and X.n == 3


def test_get_statistics():
    gen = PolynomialGenerator(seed=8)
    sets = gen.generator_sets(10)
    stats = gen.get_statistics(sets)
    assert stats["total_sets"] == 10
    assert stats["total_generators"] == sum(len(s) for s in sets)
    assert sum(stats["by_degree"].values()) == stats["total_generators"]
    assert stats["terms"]["max"] <= max(t["terms_range"][1] for t in GENERATOR_TEMPLATES.values())
